"""Elements of PGL(2, Z[i]) and PSL(2, Z[i]) as 2x2 matrices up to unit scalars."""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence

from .gaussian import I, ONE, UNITS, GaussianIdeal, GaussianInteger


class MoebiusElement:
    """A 2x2 Gaussian-integer matrix of unit determinant, modulo unit scalars.

    The stored representative is normalized: classes containing a
    determinant-1 matrix store one (``det_unit == 1``, the PSL case),
    the rest store determinant ``i``; the remaining sign is fixed by
    making the first nonzero entry (row-major) have re > 0, or re == 0
    and im > 0.
    """

    __slots__ = ("a", "b", "c", "d", "det_unit", "_key")

    def __init__(self, a, b, c, d):
        a, b, c, d = (GaussianInteger.coerce(x) for x in (a, b, c, d))
        det = a * d - b * c
        if not det.is_unit():
            raise ValueError(f"determinant {det} is not a unit")
        # scaling by a unit u multiplies det by u^2 = +-1
        if det == -ONE or det == -I:
            a, b, c, d = a * I, b * I, c * I, d * I
            det = -det
        first = next(x for x in (a, b, c, d) if x)
        if not (first.re > 0 or (first.re == 0 and first.im > 0)):
            a, b, c, d = -a, -b, -c, -d
        self.a, self.b, self.c, self.d = a, b, c, d
        self.det_unit = det
        self._key = (a.re, a.im, b.re, b.im, c.re, c.im, d.re, d.im)

    @classmethod
    def from_rows(cls, rows) -> MoebiusElement:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> MoebiusElement:
        return IDENTITY

    @property
    def rows(self) -> tuple[tuple[GaussianInteger, GaussianInteger], ...]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def key(self) -> tuple[int, ...]:
        return self._key

    def is_psl(self) -> bool:
        return self.det_unit == ONE

    def __mul__(self, other: MoebiusElement) -> MoebiusElement:
        if not isinstance(other, MoebiusElement):
            return NotImplemented
        return MoebiusElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> MoebiusElement:
        # adjugate; dividing by the unit determinant is a unit rescaling
        return MoebiusElement(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> MoebiusElement:
        base = self if n >= 0 else self.inverse()
        result = IDENTITY
        for _ in range(abs(n)):
            result = result * base
        return result

    def conjugate_by(self, h: MoebiusElement) -> MoebiusElement:
        """h * self * h^-1."""
        return h * self * h.inverse()

    def star(self) -> tuple[tuple[GaussianInteger, GaussianInteger], ...]:
        """Conjugate transpose of the stored representative (a raw matrix)."""
        return ((self.a.conjugate(), self.c.conjugate()),
                (self.b.conjugate(), self.d.conjugate()))

    def trace(self) -> GaussianInteger:
        return self.a + self.d

    def __eq__(self, other) -> bool:
        if not isinstance(other, MoebiusElement):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"MoebiusElement([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    def to_json(self) -> list[list[list[int]]]:
        return [[self.a.to_json(), self.b.to_json()],
                [self.c.to_json(), self.d.to_json()]]


IDENTITY = MoebiusElement(1, 0, 0, 1)


def compose(g: MoebiusElement, h: MoebiusElement) -> MoebiusElement:
    return g * h


def inverse(g: MoebiusElement) -> MoebiusElement:
    return g.inverse()


# Generators of the Picard group, in the order (alpha, l, t, u).
ALPHA = MoebiusElement(0, 1, -1, 0)
L = MoebiusElement(I, 0, 0, -I)
T = MoebiusElement(1, 1, 0, 1)
U = MoebiusElement(1, I, 0, 1)
PICARD_GENERATORS = (ALPHA, L, T, U)
PICARD_NAMES = ("a", "l", "t", "u")

# Coset representatives of Gamma(1+i) in PSL(2, Z[i]).
COSET_REPRESENTATIVES = (
    IDENTITY,
    MoebiusElement(0, 1, -1, 0),
    MoebiusElement(1, -1, 0, 1),
    MoebiusElement(1, 0, -1, 1),
    MoebiusElement(1, 1, -1, 0),
    MoebiusElement(0, -1, 1, 1),
)


class GroupWord:
    """A freely reduced word: a tuple of (generator index, +1/-1) letters."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[int, int]] = ()):
        out: list[tuple[int, int]] = []
        for idx, exp in letters:
            if exp not in (1, -1):
                # expand powers
                step = 1 if exp > 0 else -1
                for _ in range(abs(exp)):
                    _push(out, (idx, step))
                continue
            _push(out, (idx, exp))
        self.letters = tuple(out)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return GroupWord((i, -e) for i, e in reversed(self.letters))

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"GroupWord({list(self.letters)})"

    def format(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        return " ".join(names[i] if e == 1 else f"{names[i]}^-1" for i, e in self.letters)

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> GroupWord:
        """Parse e.g. ``"g2^-1 g1 g3 beta"`` or ``"t*u*t^-1"`` or ``"(t*l)^2"``."""
        lookup = {n: k for k, n in enumerate(names)}
        return cls(_parse_word(text.replace(" ", "*"), lookup))


def _push(out: list[tuple[int, int]], letter: tuple[int, int]) -> None:
    if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
        out.pop()
    else:
        out.append(letter)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\(|\)|\*|\^-?\d+)")


def _parse_word(text: str, lookup: dict[str, int]) -> list[tuple[int, int]]:
    tokens = [m for m in _TOKEN.findall(text) if m]
    if "".join(tokens) != text.replace(" ", ""):
        raise ValueError(f"cannot parse word {text!r}")
    pos = 0

    def factor() -> list[tuple[int, int]]:
        nonlocal pos
        tok = tokens[pos]
        if tok == "(":
            pos += 1
            inner = product()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            pos += 1
        elif tok in lookup:
            inner = [(lookup[tok], 1)]
            pos += 1
        elif tok == "1":
            inner = []
            pos += 1
        else:
            raise ValueError(f"unknown generator {tok!r} in {text!r}")
        if pos < len(tokens) and tokens[pos].startswith("^"):
            n = int(tokens[pos][1:])
            pos += 1
            if n < 0:
                inner = [(i, -e) for i, e in reversed(inner)]
                n = -n
            inner = inner * n
        return inner

    def product() -> list[tuple[int, int]]:
        nonlocal pos
        out = factor()
        while pos < len(tokens) and tokens[pos] == "*":
            pos += 1
            out += factor()
        return out

    if not tokens or tokens == ["1"]:
        return []
    result = product()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def evaluate_word(gens: Sequence[MoebiusElement], w: GroupWord) -> MoebiusElement:
    result = IDENTITY
    inverses: dict[int, MoebiusElement] = {}
    for idx, exp in w:
        if not 0 <= idx < len(gens):
            raise IndexError(f"generator index {idx} out of range for {len(gens)} generators")
        if exp == 1:
            result = result * gens[idx]
        else:
            if idx not in inverses:
                inverses[idx] = gens[idx].inverse()
            result = result * inverses[idx]
    return result


def in_principal_congruence(g: MoebiusElement, ideal: GaussianIdeal) -> bool:
    if not g.is_psl():
        raise ValueError("not a PSL element")
    beta = ideal.generator
    for u in UNITS:
        if (beta.divides(u * g.a - 1) and beta.divides(u * g.b)
                and beta.divides(u * g.c) and beta.divides(u * g.d - 1)):
            return True
    return False


def trace_class(g: MoebiusElement) -> frozenset[GaussianInteger]:
    if not g.is_psl():
        raise ValueError("not a PSL element")
    tr = g.trace()
    return frozenset((tr, -tr))


def is_parabolic(g: MoebiusElement) -> bool:
    return trace_class(g) == {GaussianInteger(2), GaussianInteger(-2)} and g != IDENTITY


def picard_word(g: MoebiusElement) -> GroupWord:
    """Express a PSL element as a word in (alpha, l, t, u).

    Euclidean reduction: translate the top-left entry below the
    bottom-left one in norm, swap rows with alpha, repeat until the
    matrix is upper triangular.
    """
    if not g.is_psl():
        raise ValueError("not a PSL element")
    a, b, c, d = g.a, g.b, g.c, g.d
    prefix: list[tuple[int, int]] = []  # prefix * g is upper triangular
    while c:
        if a.norm() >= c.norm():
            q, _ = a.divmod(c)
            a, b = a - q * c, b - q * d
            prefix[:0] = [(2, -q.re), (3, -q.im)]
        if a.norm() < c.norm():
            # alpha * [[a,b],[c,d]] = [[c,d],[-a,-b]]
            a, b, c, d = c, d, -a, -b
            prefix[:0] = [(0, 1)]
    tail: list[tuple[int, int]] = []
    if a == I or a == -I:
        # [[a, b], [0, d]] = +-l * [[1, b/a], [0, 1]]
        tail.append((1, 1))
    shift = b.exact_div(a)
    tail += [(2, shift.re), (3, shift.im)]
    word = GroupWord(prefix).inverse() * GroupWord(tail)
    assert evaluate_word(PICARD_GENERATORS, word) == g
    return word


class _ResidueQuotient:
    """PSL(2, Z[i]) reduced modulo an ideal, with elements as residue tuples mod +-1."""

    def __init__(self, ideal: GaussianIdeal):
        self.ideal = ideal

    def reduce(self, g: MoebiusElement) -> tuple:
        m = tuple(self.ideal.residue(x) for x in (g.a, g.b, g.c, g.d))
        neg = tuple(self.ideal.residue(-x) for x in (g.a, g.b, g.c, g.d))
        return min(m, neg)

    def mul(self, x: tuple, y: tuple) -> tuple:
        a, b, c, d = (GaussianInteger(*e) for e in x)
        p, q, r, s = (GaussianInteger(*e) for e in y)
        prod = (a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)
        m = tuple(self.ideal.residue(z) for z in prod)
        neg = tuple(self.ideal.residue(-z) for z in prod)
        return min(m, neg)

    def closure(self, gens: Sequence[tuple], cap: int) -> set:
        ident = self.reduce(IDENTITY)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        if len(seen) > cap:
                            raise RuntimeError("quotient too large")
                        nxt.append(y)
            frontier = nxt
        return seen


def congruence_quotient_index(gens: Sequence[MoebiusElement], ideal: GaussianIdeal,
                              *, normal_closure: bool = False, cap: int = 100_000) -> int:
    """Index in PSL(2, Z[i]) of the group generated by ``gens`` and Gamma(ideal).

    Materializes PSL(2, Z[i]/ideal) by closing the images of the Picard
    generators. With ``normal_closure`` the image subgroup is replaced by
    its normal closure in that finite group.
    """
    for g in gens:
        if not g.is_psl():
            raise ValueError("not a PSL element")
    q = _ResidueQuotient(ideal)
    ambient_gens = [q.reduce(g) for g in PICARD_GENERATORS]
    ambient = q.closure(ambient_gens, cap)
    images = [q.reduce(g) for g in gens]
    sub = q.closure(images, cap)
    if normal_closure:
        inverses = {x: next(y for y in ambient if q.mul(x, y) == q.reduce(IDENTITY))
                    for x in ambient_gens}
        while True:
            conj = {q.mul(q.mul(s, x), inverses[s]) for s in ambient_gens for x in sub}
            bigger = q.closure(list(conj | sub), cap)
            if len(bigger) == len(sub):
                break
            sub = bigger
    return len(ambient) // len(sub)


def quotient_order(ideal: GaussianIdeal, cap: int = 100_000) -> int:
    """Order of PSL(2, Z[i]) / Gamma(ideal)."""
    return congruence_quotient_index([], ideal, cap=cap)


def l_normalizes_image(gens: Sequence[MoebiusElement], ideal: GaussianIdeal) -> bool:
    """Whether conjugation by l preserves the image of ``gens`` mod ``ideal``."""
    q = _ResidueQuotient(ideal)
    sub = q.closure([q.reduce(g) for g in gens], 100_000)
    lq, linv = q.reduce(L), q.reduce(L.inverse())
    return all(q.mul(q.mul(lq, x), linv) in sub for x in sub)
