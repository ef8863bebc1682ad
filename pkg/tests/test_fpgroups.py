import random
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picard.fpgroups import (
    STRATEGIES,
    EnumerationError,
    Presentation,
    abelian_invariants,
    coset_enumerate,
    coxeter_presentation,
    normal_closure_table,
    picard_presentation,
    quotient_order,
    relators_hold,
    smith_normal_form,
    subgroup_presentation,
)
from picard.moebius import GroupWord

P = picard_presentation()
GAMMA_1I = [P.word("t*u"), P.word("t^2"), P.word("u^2")]


def det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))


def invariant_factors_oracle(M):
    """s_k = d_k / d_(k-1), d_k the gcd of all k x k minors."""
    m, n = len(M), len(M[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        d = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                d = gcd(d, det([[M[i][j] for j in cols] for i in rows]))
        if d == 0:
            out += [0] * (min(m, n) - k + 1)
            break
        out.append(d // prev)
        prev = d
    return out


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_picard_quotients(strategy):
    assert quotient_order(P, GAMMA_1I, strategy=strategy) == 6
    assert quotient_order(P, [P.word("t^2*u^2"), P.word("t^4")], strategy=strategy) == 192


def test_small_groups():
    C2 = Presentation.from_strings("x", ["x^2"])
    assert quotient_order(C2) == 2
    assert abelian_invariants(C2).torsion == (2,)
    C6 = Presentation.from_strings("x", ["x^6"])
    t = coset_enumerate(C6, [C6.word("x^2")])
    assert t.index == 2
    assert abelian_invariants(subgroup_presentation(C6, t)).torsion == (3,)
    S3 = Presentation.from_strings("ab", ["a^2", "b^2", "(a*b)^3"])
    assert coset_enumerate(S3).index == 6
    Z2 = Presentation.from_strings("ab", ["a*b*a^-1*b^-1"])
    inv = abelian_invariants(Z2)
    assert inv.rank == 2 and inv.torsion == ()


def test_index_one_table_preserves_invariants():
    S3 = Presentation.from_strings("ab", ["a^2", "b^2", "(a*b)^3"])
    t = coset_enumerate(S3, [S3.word("a"), S3.word("b")])
    assert t.index == 1
    assert abelian_invariants(subgroup_presentation(S3, t)) == abelian_invariants(S3)


def test_gamma_1i_abelianization():
    table = normal_closure_table(P, GAMMA_1I)
    inv = abelian_invariants(subgroup_presentation(P, table))
    assert inv.torsion == (2, 2, 2, 2, 2) and inv.rank == 0


def test_rotation_subgroup_of_coxeter_group():
    C = coxeter_presentation()
    even = coset_enumerate(C, [C.word("a*b"), C.word("a*c"), C.word("a*d")])
    assert even.index == 2
    inv = abelian_invariants(subgroup_presentation(C, even))
    assert inv.torsion == (2, 2) and inv.rank == 0


def test_cap_exceeded():
    free_ish = Presentation.from_strings("xy", ["x^2"])
    with pytest.raises(EnumerationError, match="enumeration did not complete"):
        coset_enumerate(free_ish, cap=200)


def test_strategies_agree_on_tables():
    for extra in (GAMMA_1I, [P.word("t^2*u^2"), P.word("t^4")]):
        tables = [normal_closure_table(P, extra, strategy=s) for s in STRATEGIES]
        assert tables[0].rows == tables[1].rows
        assert relators_hold(P.with_relators(extra), tables[0])


def test_incomplete_table_rejected():
    S3 = Presentation.from_strings("ab", ["a^2", "b^2", "(a*b)^3"])
    t = coset_enumerate(S3)
    with pytest.raises(ValueError):
        subgroup_presentation(Presentation.from_strings("ab", ["a^3"]), t)


def test_tietze_moves_preserve_order():
    S4 = Presentation.from_strings("ab", ["a^2", "b^3", "(a*b)^4"])
    n = coset_enumerate(S4).index
    assert n == 24
    conj = Presentation(S4.generators, (S4.relators[0], S4.word("a*b^3*a^-1"), S4.relators[2]))
    product = S4.with_relators([S4.relators[0] * S4.relators[1]])
    # new generator c = a*b together with its defining relator
    extended = Presentation.from_strings("abc", ["a^2", "b^3", "c^4", "c^-1*a*b"])
    for Q in (conj, product, extended):
        assert coset_enumerate(Q).index == n
        assert abelian_invariants(Q) == abelian_invariants(S4)


def test_parse_round_trip():
    text = "x y  # generators\n x^2\n\n (x*y)^3 \n"
    p = Presentation.parse(text)
    assert p.generators == ("x", "y")
    assert Presentation.parse(p.format()) == p
    with pytest.raises(ValueError):
        Presentation.parse("  \n# nothing\n")
    with pytest.raises(ValueError):
        Presentation(("x",), (GroupWord([(1, 1)]),))


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[0, 0], [0, 0]]) == [0, 0]
    assert smith_normal_form([[1 if i == j else 0 for j in range(4)] for i in range(4)]) == [1] * 4


@settings(max_examples=1000, derandomize=True)
@given(st.integers(0, 2**32))
def test_snf_divisibility_chain(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 4), rng.randint(1, 4)
    M = [[rng.randint(-9, 9) if rng.random() < 0.8 else 0 for _ in range(n)] for _ in range(m)]
    diag = smith_normal_form(M)
    assert len(diag) == min(m, n)
    assert all(d >= 0 for d in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) if x == 0 else (y % x == 0)
    assert diag == invariant_factors_oracle(M)
