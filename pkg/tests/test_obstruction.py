import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_form, random_psl
from picard.datasets import ManifoldGroupData, load_named
from picard.gaussian import UNITS, GaussianInteger as G, GaussianRational
from picard.hermitian import (
    CanonicalCircleId,
    HermitianForm,
    act,
    intersect_count,
    is_invariant,
    transported_base_forms,
)
from picard.moebius import IDENTITY
from picard.obstruction import (
    closed_candidates,
    jr_trace,
    verify_paper_tables,
    verify_table,
    violates_embedding,
    witness_search,
)

seeds = st.integers(0, 2**32)
FORMS = transported_base_forms()
TWO_THIRDS = Fraction(2, 3)


def matrix_trace_oracle(rows, F: HermitianForm) -> GaussianRational:
    """tr(M* F M F^-1) over Q(i) from a raw (not normalized) matrix M."""
    (a, b), (c, d) = [[GaussianRational.coerce(x) for x in r] for r in rows]
    M = [[a, b], [c, d]]
    Ms = [[M[j][i].conjugate() for j in range(2)] for i in range(2)]
    Fm = [[GaussianRational.coerce(x) for x in r] for r in F.matrix]
    det = Fm[0][0] * Fm[1][1] - Fm[0][1] * Fm[1][0]
    Finv = [[Fm[1][1] / det, -Fm[0][1] / det], [-Fm[1][0] / det, Fm[0][0] / det]]

    def mul(X, Y):
        return [[X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)] for i in range(2)]

    P = mul(mul(mul(Ms, Fm), M), Finv)
    return P[0][0] + P[1][1]


@pytest.fixture(scope="module")
def datasets():
    return {n: load_named(n) for n in ("A+", "B+", "C+", "D+", "E+")}


def test_jr_trace_examples(datasets):
    assert jr_trace(IDENTITY, FORMS[0]) == 2
    a = datasets["A+"]
    assert abs(jr_trace(a.element("g3"), FORMS[0])) == TWO_THIRDS
    g4 = datasets["C+"].element("g4")
    assert all(abs(jr_trace(g4, F)) == TWO_THIRDS for F in FORMS)
    with pytest.raises(ValueError):
        jr_trace(IDENTITY, HermitianForm(1, 1, 1))


def test_violates_examples(datasets):
    assert violates_embedding(datasets["A+"].element("g3"), FORMS[0])
    assert not violates_embedding(IDENTITY, FORMS[2])
    assert violates_embedding(datasets["B+"].element("l g1 l^-1"), FORMS[4])


def test_search_examples(datasets):
    c = datasets["C+"]
    for k in range(6):
        w = witness_search(c, k, 1)
        assert w is not None and len(w.word) == 1
        assert violates_embedding(c.element("g4"), FORMS[k])
    w = witness_search(datasets["A+"], 2, 2)
    assert w is not None and abs(w.trace_value) < 2
    assert violates_embedding(datasets["A+"].element("g1 g4"), FORMS[2])
    empty = ManifoldGroupData("A+", (), ())
    assert witness_search(empty, 0, 3) is None


def test_search_deterministic(datasets):
    a = witness_search(datasets["B+"], 3, 3)
    b = witness_search(datasets["B+"], 3, 3)
    assert a == b


def test_tables(datasets):
    reports = verify_paper_tables(list(datasets.values()))
    assert len(reports) == 5 and sum(len(r.rows) for r in reports) == 30
    for r in reports:
        for row in r.rows:
            assert abs(row.trace) == TWO_THIRDS
            assert not row.invariant
            assert row.status == "pass"
    assert [row.listed_word for row in verify_table(datasets["C+"]).rows] == ["g4"] * 6
    d_rows = [row.listed_word for row in verify_table(datasets["D+"]).rows]
    e_rows = [row.listed_word for row in verify_table(datasets["E+"]).rows]
    assert d_rows == e_rows == ["g1", "g1"] + ["l g1 l^-1"] * 4


def test_traces_are_signed(datasets):
    signs = {row.trace > 0 for r in verify_paper_tables(list(datasets.values())) for row in r.rows}
    assert signs == {True, False}


def test_missing_witness_is_an_error(datasets):
    a = datasets["A+"]
    short = ManifoldGroupData(a.name, a.generators, a.reflection_words, a.auxiliary, a.witnesses[:3])
    with pytest.raises(ValueError, match="no listed witness"):
        verify_table(short)


def test_candidates():
    names = lambda t, **kw: sorted(str(c) for c in closed_candidates(t, **kw).candidates)  # noqa: E731
    assert names(G(2, 2)) == sorted(["C_1", "C_2", "C_1,1", "C_1,2", "C_2,3", "C_5,1", "C_5,2", "C_6,3"])
    assert names(2) == sorted(["C_1", "C_1,1", "C_1,2", "C_2,3"])
    assert names(G(1, 1)) == sorted(["C_1,1", "C_1,2", "C_2,3"])
    assert "C_2" not in names(G(2, 2), strict=True)
    assert CanonicalCircleId(6, 3) in closed_candidates(G(2, 2)).candidates
    with pytest.raises(ValueError):
        closed_candidates(0)


@settings(max_examples=1000, derandomize=True)
@given(seeds)
def test_jr_trace_real_against_matrix_oracle(seed):
    rng = random.Random(seed)
    g = random_psl(rng)
    F = random_form(rng, circle=False)
    t = matrix_trace_oracle(g.rows, F)
    assert t.is_real()
    assert t.to_fraction() == jr_trace(g, F)
    u = rng.choice(UNITS)
    scaled = [[u * x for x in r] for r in g.rows]
    assert matrix_trace_oracle(scaled, F).to_fraction() == jr_trace(g, F)


@settings(max_examples=1000, derandomize=True)
@given(seeds)
def test_violation_implies_crossing(seed):
    rng = random.Random(seed)
    g = random_psl(rng, 6)
    F = rng.choice(FORMS) if rng.random() < 0.5 else random_form(rng, 4)
    G_ = act(g, F)
    if G_.a == 0:
        return
    if violates_embedding(g, F):
        assert intersect_count(F, G_) in (1, 2)
    elif not is_invariant(g, F):
        assert intersect_count(F, G_) == 0 or abs(jr_trace(g, F)) >= 2
