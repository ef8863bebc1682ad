"""Exact arithmetic in the Gaussian integers Z[i] and the field Q(i)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True, slots=True)
class GaussianInteger:
    re: int = 0
    im: int = 0

    @classmethod
    def coerce(cls, x) -> GaussianInteger:
        if isinstance(x, GaussianInteger):
            return x
        if isinstance(x, bool) or not isinstance(x, int):
            if isinstance(x, (tuple, list)) and len(x) == 2:
                return cls(int(x[0]), int(x[1]))
            raise TypeError(f"cannot interpret {x!r} as a Gaussian integer")
        return cls(x, 0)

    def __add__(self, other):
        try:
            o = GaussianInteger.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInteger(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianInteger.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInteger(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianInteger.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussianInteger.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInteger(self.re * o.re - self.im * o.im,
                               self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self) -> GaussianInteger:
        return GaussianInteger(-self.re, -self.im)

    def __pow__(self, n: int) -> GaussianInteger:
        if n < 0:
            raise ValueError("negative powers are not Gaussian integers")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianInteger):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def conjugate(self) -> GaussianInteger:
        return GaussianInteger(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divmod(self, other) -> tuple[GaussianInteger, GaussianInteger]:
        """Euclidean division with remainder of norm at most half the divisor's."""
        o = GaussianInteger.coerce(other)
        if not o:
            raise ZeroDivisionError("division by zero Gaussian integer")
        n = o.norm()
        p = self * o.conjugate()
        q = GaussianInteger(_round_div(p.re, n), _round_div(p.im, n))
        return q, self - q * o

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def divides(self, other) -> bool:
        o = GaussianInteger.coerce(other)
        if not self:
            return not o
        n = self.norm()
        p = o * self.conjugate()
        return p.re % n == 0 and p.im % n == 0

    def exact_div(self, other) -> GaussianInteger:
        o = GaussianInteger.coerce(other)
        if not o.divides(self):
            raise ArithmeticError(f"{o} does not divide {self}")
        n = o.norm()
        p = self * o.conjugate()
        return GaussianInteger(p.re // n, p.im // n)

    def canonical_associate(self) -> GaussianInteger:
        """The associate with re > 0, im >= 0 (zero maps to zero)."""
        z = self
        for _ in range(4):
            if z.re > 0 and z.im >= 0:
                return z
            z = z * I
        return z

    def __repr__(self) -> str:
        return f"GaussianInteger({self.re}, {self.im})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sign}{'' if mag == 1 else mag}i"

    def to_json(self) -> list[int]:
        return [self.re, self.im]


def _round_div(p: int, n: int) -> int:
    # nearest integer to p/n, ties toward -inf; exact for big ints
    return (2 * p + n) // (2 * n)


ZERO = GaussianInteger(0, 0)
ONE = GaussianInteger(1, 0)
I = GaussianInteger(0, 1)
UNITS = (ONE, I, -ONE, -I)


def norm(z) -> int:
    return GaussianInteger.coerce(z).norm()


def gi_gcd(z, w) -> GaussianInteger:
    z, w = GaussianInteger.coerce(z), GaussianInteger.coerce(w)
    if not z and not w:
        raise ValueError("gcd undefined for (0, 0)")
    while w:
        z, w = w, z % w
    return z.canonical_associate()


@dataclass(frozen=True, slots=True)
class GaussianIdeal:
    generator: GaussianInteger

    def __post_init__(self):
        g = GaussianInteger.coerce(self.generator)
        if not g:
            raise ValueError("ideal generator must be nonzero")
        object.__setattr__(self, "generator", g)

    def __contains__(self, z) -> bool:
        return self.generator.divides(z)

    def index(self) -> int:
        """Size of the residue ring Z[i]/(generator)."""
        return self.generator.norm()

    def residue(self, z) -> tuple[int, int]:
        """Canonical representative of z modulo the ideal, as (re, im).

        Uses a Hermite basis (x, g), (y, 0) of the ideal seen as a
        lattice in Z^2, so the result has 0 <= im < g and 0 <= re < |y|.
        """
        z = GaussianInteger.coerce(z)
        (x, g), y = _hermite_basis(self.generator)
        re, im = z.re, z.im
        k = im // g
        re, im = re - k * x, im - k * g
        return re % y, im

    def __str__(self) -> str:
        return f"({self.generator})"


_HERMITE_CACHE: dict[GaussianInteger, tuple[tuple[int, int], int]] = {}


def _hermite_basis(beta: GaussianInteger) -> tuple[tuple[int, int], int]:
    cached = _HERMITE_CACHE.get(beta)
    if cached is not None:
        return cached
    # ideal = Z-span of beta = (m, n) and i*beta = (-n, m)
    m, n = beta.re, beta.im
    # extended gcd on the imaginary coordinates n and m
    g, s, t = _xgcd(n, m)
    # s*n + t*m = g; combine rows: s*(m, n) + t*(-n, m) = (s*m - t*n, g)
    x = s * m - t * n
    N = m * m + n * n
    y = N // g
    result = ((x, g), y)
    _HERMITE_CACHE[beta] = result
    return result


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def congruent_mod(z, w, ideal: GaussianIdeal) -> bool:
    return ideal.generator.divides(GaussianInteger.coerce(z) - GaussianInteger.coerce(w))


class GaussianRational:
    """An element num/den of Q(i) with den a positive rational integer, kept reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        num = GaussianInteger.coerce(num)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(gcd(num.re, num.im), den)
        if g > 1:
            num = GaussianInteger(num.re // g, num.im // g)
            den //= g
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, Fraction):
            return cls(x.numerator, x.denominator)
        return cls(GaussianInteger.coerce(x))

    @property
    def real(self) -> Fraction:
        return Fraction(self.num.re, self.den)

    @property
    def imag(self) -> Fraction:
        return Fraction(self.num.im, self.den)

    def is_real(self) -> bool:
        return self.num.im == 0

    def to_fraction(self) -> Fraction:
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return self.real

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.num, self.den)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        # den / num = den * conj(num) / norm(num)
        return GaussianRational(self.num.conjugate() * self.den, self.num.norm())

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.num.conjugate(), self.den)

    def norm(self) -> Fraction:
        return Fraction(self.num.norm(), self.den * self.den)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"GaussianRational({self.num!r}, {self.den})"

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"({self.num})/{self.den}"
