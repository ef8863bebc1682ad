"""Integral Hermitian forms a|z|^2 + conj(B) z + B conj(z) + c and the circles they cut out."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .gaussian import GaussianInteger, GaussianRational
from .moebius import COSET_REPRESENTATIVES, MoebiusElement


@dataclass(frozen=True, slots=True)
class HermitianForm:
    """The Hermitian matrix [[a, B], [conj(B), c]]."""

    a: int
    B: GaussianInteger
    c: int

    def __post_init__(self):
        object.__setattr__(self, "B", GaussianInteger.coerce(self.B))

    @property
    def matrix(self):
        return ((GaussianInteger(self.a), self.B),
                (self.B.conjugate(), GaussianInteger(self.c)))

    def discriminant(self) -> int:
        return self.B.norm() - self.a * self.c

    def is_circle(self) -> bool:
        return self.a != 0

    def is_line(self) -> bool:
        return self.a == 0 and bool(self.B)

    def evaluate(self, z) -> Fraction:
        """a|z|^2 + conj(B) z + B conj(z) + c, exactly, for z in Q(i)."""
        z = GaussianRational.coerce(z)
        val = self.a * z * z.conjugate() + self.B.conjugate() * z + self.B * z.conjugate() + self.c
        return val.to_fraction()

    def to_json(self) -> dict:
        return {"a": self.a, "B": self.B.to_json(), "c": self.c}

    def __str__(self) -> str:
        return f"[[{self.a}, {self.B}], [{self.B.conjugate()}, {self.c}]]"


def discriminant(F: HermitianForm) -> int:
    return F.discriminant()


def _matmul(X, Y):
    return tuple(tuple(X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)) for i in range(2))


def act(g: MoebiusElement, F: HermitianForm) -> HermitianForm:
    """The form g* F g, whose circle is g^-1 applied to the circle of F."""
    M = _matmul(_matmul(g.star(), F.matrix), g.rows)
    (a, B), (Bc, c) = M
    assert a.im == 0 and c.im == 0 and Bc == B.conjugate(), "non-Hermitian result"
    return HermitianForm(a.re, B, c.re)


BASE_FORM = HermitianForm(2, GaussianInteger(1, -1), -2)


def transported_base_forms() -> list[HermitianForm]:
    """The forms of the circles T_k C_{6,3} for the six coset representatives T_k."""
    return [act(T.inverse(), BASE_FORM) for T in COSET_REPRESENTATIVES]


@dataclass(frozen=True)
class CircleGeometry:
    center: GaussianRational
    radius_sq: Fraction


def circle_geometry(F: HermitianForm) -> CircleGeometry:
    if F.a == 0:
        raise ValueError("line, not circle")
    D = F.discriminant()
    if D <= 0:
        raise ValueError("empty or point locus")
    return CircleGeometry(GaussianRational(-F.B, 1) / F.a, Fraction(D, F.a * F.a))


@dataclass(frozen=True, slots=True)
class CanonicalCircleId:
    D: int
    variant: str | int = "plain"

    def __post_init__(self):
        if self.D <= 0:
            raise ValueError("discriminant must be positive")
        if self.variant not in ("plain", 1, 2, 3):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant in (1, 2) and self.D % 4 != 1:
            raise ValueError(f"variant {self.variant} needs D = 1 mod 4, got D = {self.D}")
        if self.variant == 3 and self.D % 4 != 2:
            raise ValueError(f"variant 3 needs D = 2 mod 4, got D = {self.D}")

    @property
    def radius_sq(self) -> Fraction:
        return Fraction(self.D) if self.variant == "plain" else Fraction(self.D, 4)

    def __str__(self) -> str:
        return f"C_{self.D}" if self.variant == "plain" else f"C_{self.D},{self.variant}"


def canonical_form(cid: CanonicalCircleId) -> HermitianForm:
    D = cid.D
    if cid.variant == "plain":
        return HermitianForm(1, GaussianInteger(0), -D)
    if cid.variant == 1:
        return HermitianForm(2, GaussianInteger(1), -(D - 1) // 2)
    if cid.variant == 2:
        # 2|z|^2 + i z - i conj(z): conj(B) = i
        return HermitianForm(2, GaussianInteger(0, -1), -(D - 1) // 2)
    return HermitianForm(2, GaussianInteger(1, -1), -(D - 2) // 2)


def canonical_ids(max_D: int) -> list[CanonicalCircleId]:
    """All canonical circle ids with D <= max_D, by increasing D."""
    out = []
    for D in range(1, max_D + 1):
        out.append(CanonicalCircleId(D))
        if D % 4 == 1:
            out += [CanonicalCircleId(D, 1), CanonicalCircleId(D, 2)]
        elif D % 4 == 2:
            out.append(CanonicalCircleId(D, 3))
    return out


def primitive(F: HermitianForm) -> HermitianForm:
    g = gcd(gcd(F.a, F.B.re), gcd(F.B.im, F.c))
    if g == 0:
        raise ValueError("zero form has no primitive representative")
    a, B, c = F.a // g, GaussianInteger(F.B.re // g, F.B.im // g), F.c // g
    # only +-1 rescalings keep the form Hermitian
    if a:
        flip = a < 0
    elif B:
        flip = not (B.re > 0 or (B.re == 0 and B.im > 0))
    else:
        flip = c < 0
    if flip:
        a, B, c = -a, -B, -c
    return HermitianForm(a, B, c)


def is_invariant(g: MoebiusElement, F: HermitianForm) -> bool:
    """Whether g maps the circle of F onto itself (either orientation)."""
    return primitive(act(g, F)) == primitive(F)


def fixes_form(g: MoebiusElement, F: HermitianForm) -> bool:
    """Whether g* F g == F exactly, i.e. g keeps each side of the circle.

    Differs from ``is_invariant`` when g swaps the two discs (g* F g == -F).
    """
    return act(g, F) == F


def intersect_count(F1: HermitianForm, F2: HermitianForm) -> int | str:
    """Number of intersection points of two circles, or ``"same"``."""
    if F1.a == 0 or F2.a == 0:
        raise ValueError("unsupported: line")
    if primitive(F1) == primitive(F2):
        return "same"
    g1, g2 = circle_geometry(F1), circle_geometry(F2)
    d = (g1.center - g2.center).norm()
    R1, R2 = g1.radius_sq, g2.radius_sq
    # |r1 - r2| < dist < r1 + r2  <=>  (d - R1 - R2)^2 < 4 R1 R2
    lhs, rhs = (d - R1 - R2) ** 2, 4 * R1 * R2
    if lhs < rhs:
        return 2
    if lhs == rhs:
        return 1
    return 0
