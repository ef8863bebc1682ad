"""Collar volumes around closed totally geodesic hypersurfaces in hyperbolic 4-manifolds."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

# Volume of the Weeks manifold, the smallest closed hyperbolic 3-manifold
# (Gabai-Meyerhoff-Milley); the bound is applied as 0.94.
WEEKS_VOLUME = 0.9427
WEEKS_BOUND = 0.94

DEFAULT_TOL = 1e-12


def collar_radius(x: float) -> float:
    """r(x) = log coth(x/2)."""
    if x <= 0:
        raise ValueError("collar_radius needs x > 0")
    # log coth(x/2) = log((1 + e^-x) / (1 - e^-x)), stable for large x
    e = math.exp(-x)
    return math.log1p(e) - math.log1p(-e)


def ball_volume(r: float) -> float:
    """Volume of a hyperbolic 3-ball: 4 pi int_0^r sinh^2 = pi (sinh 2r - 2r)."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r < 1e-3:
        # series avoids cancellation: (4 pi / 3) r^3 (1 + r^2/5 + 2 r^4/105)
        return 4 * math.pi / 3 * r ** 3 * (1 + r * r / 5 + 2 * r ** 4 / 105)
    return math.pi * (math.sinh(2 * r) - 2 * r)


def v_of_r(x: float) -> float:
    return ball_volume(collar_radius(x))


def invert_v_of_r(y: float, tol: float = DEFAULT_TOL) -> float:
    """The x > 0 with V(r(x)) = y, by bisection on the decreasing map."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if y <= 0:
        raise ValueError("y must be positive")
    lo, hi = 1.0, 1.0
    while v_of_r(lo) < y:
        lo /= 2
    while v_of_r(hi) > y:
        hi *= 2
    while True:
        mid = 0.5 * (lo + hi)
        fm = v_of_r(mid)
        if abs(fm - y) <= tol or mid in (lo, hi):
            return mid
        if fm > y:
            lo = mid
        else:
            hi = mid


def collar_halfwidth(vol3: float, tol: float = DEFAULT_TOL) -> float:
    """d_4(A) = (1/2) (V o r)^-1 (A/2), the separating-case collar width."""
    return 0.5 * invert_v_of_r(vol3 / 2, tol)


def collar_halfwidth_general(vol3: float, tol: float = DEFAULT_TOL) -> float:
    """c_4(A) = (1/2) (V o r)^-1 (A), valid without the separating hypothesis."""
    return 0.5 * invert_v_of_r(vol3, tol)


@dataclass(frozen=True)
class TubeComputation:
    vol3: float
    collar_halfwidth: float
    tube_volume: float
    tolerance: float


def tube_integral(d: float) -> float:
    """int_0^d cosh^3 = sinh d + sinh^3 d / 3."""
    s = math.sinh(d)
    return s + s ** 3 / 3


def tube_volume(vol3: float, tol: float = DEFAULT_TOL) -> TubeComputation:
    if vol3 <= 0:
        raise ValueError("vol3 must be positive")
    d = collar_halfwidth(vol3, tol)
    return TubeComputation(vol3, d, 2 * vol3 * tube_integral(d), tol)


def euler_volume(chi: int) -> float:
    """Volume (4 pi^2 / 3) chi of a hyperbolic 4-manifold of Euler characteristic chi."""
    if chi < 1:
        raise ValueError("Euler characteristic must be positive")
    return 4 * math.pi ** 2 / 3 * chi


@dataclass(frozen=True)
class ContradictionReport:
    copies: int
    vol3: float
    chi: int
    collar_halfwidth: float
    tube_volume: float
    lhs: float
    rhs: float
    contradiction: bool
    tolerance: float

    def to_json(self) -> dict:
        return asdict(self)


def contradiction_check(copies: int, vol3: float, chi: int,
                        tol: float = 1e-3, root_tol: float = DEFAULT_TOL) -> ContradictionReport:
    """Compare K disjoint collars against the Gauss-Bonnet volume."""
    if copies < 1:
        raise ValueError("copies must be at least 1")
    tube = tube_volume(vol3, root_tol)
    lhs = copies * tube.tube_volume
    rhs = euler_volume(chi)
    return ContradictionReport(copies, vol3, chi, tube.collar_halfwidth, tube.tube_volume,
                               lhs, rhs, lhs - rhs > tol, tol)
