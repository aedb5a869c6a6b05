"""Exact rationals and guaranteed rectangle enclosures.

Every enclosure carries exact ``Fraction`` endpoints.  Arithmetic on
enclosures is exact; callers that iterate (Horner loops, Taylor sums) call
``rounded(bits)`` to push endpoints outward onto a dyadic grid, which keeps
denominators bounded without ever losing containment.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Number = Union[int, Fraction]


class DivisorContainsZero(ZeroDivisionError):
    pass


class RemainderDiverges(ArithmeticError):
    pass


# -- outward rounding ---------------------------------------------------------

def round_down(x: Fraction, bits: int) -> Fraction:
    """Largest multiple of 2**-bits that is <= x (x itself if already coarse)."""
    if x.denominator.bit_length() <= bits + 1:
        return x
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def round_up(x: Fraction, bits: int) -> Fraction:
    if x.denominator.bit_length() <= bits + 1:
        return x
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


def sqrt_lower(x: Fraction, bits: int) -> Fraction:
    """Rational r with r <= sqrt(x), within 2**-bits."""
    if x <= 0:
        return Fraction(0)
    scaled = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(math.isqrt(scaled), 1 << bits)


def sqrt_upper(x: Fraction, bits: int) -> Fraction:
    if x <= 0:
        return Fraction(0)
    scaled = -((-x.numerator << (2 * bits)) // x.denominator)
    s = math.isqrt(scaled)
    if s * s < scaled:
        s += 1
    return Fraction(s, 1 << bits)


# -- real intervals -----------------------------------------------------------

class RealEnclosure:
    """Closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Number, hi: Number | None = None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def _coerce(cls, other) -> "RealEnclosure":
        if isinstance(other, RealEnclosure):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return NotImplemented

    @classmethod
    def _raw(cls, lo: Fraction, hi: Fraction) -> "RealEnclosure":
        # trusted constructor for results of internal arithmetic
        obj = object.__new__(cls)
        obj.lo = lo
        obj.hi = hi
        return obj

    def __repr__(self) -> str:
        return f"RealEnclosure({self.lo}, {self.hi})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RealEnclosure):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def mag(self) -> Fraction:
        """sup |x| over the interval."""
        return max(-self.lo, self.hi)

    def mig(self) -> Fraction:
        """inf |x| over the interval."""
        if self.lo > 0:
            return self.lo
        if self.hi < 0:
            return -self.hi
        return Fraction(0)

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_point(self) -> bool:
        return self.lo == self.hi

    def intersects(self, other: "RealEnclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def subset_of(self, other: "RealEnclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def inflate(self, radius: Number) -> "RealEnclosure":
        return RealEnclosure(self.lo - radius, self.hi + radius)

    def rounded(self, bits: int) -> "RealEnclosure":
        return RealEnclosure._raw(round_down(self.lo, bits), round_up(self.hi, bits))

    def __neg__(self) -> "RealEnclosure":
        return RealEnclosure._raw(-self.hi, -self.lo)

    def __add__(self, other) -> "RealEnclosure":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RealEnclosure._raw(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other) -> "RealEnclosure":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RealEnclosure._raw(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other) -> "RealEnclosure":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RealEnclosure":
        if isinstance(other, (int, Fraction)):
            a, b = self.lo * other, self.hi * other
            return RealEnclosure._raw(min(a, b), max(a, b))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ps = (self.lo * other.lo, self.lo * other.hi,
              self.hi * other.lo, self.hi * other.hi)
        return RealEnclosure._raw(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "RealEnclosure":
        if self.contains_zero():
            raise DivisorContainsZero(f"divisor {self!r} contains 0")
        return RealEnclosure._raw(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "RealEnclosure":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisorContainsZero("division by exact zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "RealEnclosure":
        return self._coerce(other) / self

    def __pow__(self, e: int) -> "RealEnclosure":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (self ** -e).reciprocal()
        if e == 0:
            return RealEnclosure(1)
        if e % 2:
            return RealEnclosure._raw(Fraction(self.lo ** e), Fraction(self.hi ** e))
        # even power: the result depends only on |x|
        return RealEnclosure._raw(self.mig() ** e, self.mag() ** e)

    def sqr(self) -> "RealEnclosure":
        return self ** 2


# -- complex rectangles -------------------------------------------------------

class ComplexEnclosure:
    """Axis-parallel rectangle re x im in the complex plane."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = re if isinstance(re, RealEnclosure) else RealEnclosure(re)
        self.im = im if isinstance(im, RealEnclosure) else RealEnclosure(im)

    @classmethod
    def _coerce(cls, other) -> "ComplexEnclosure":
        if isinstance(other, ComplexEnclosure):
            return other
        if isinstance(other, (int, Fraction, RealEnclosure)):
            return cls(other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"ComplexEnclosure(re={self.re!r}, im={self.im!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexEnclosure):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def is_point(self) -> bool:
        return self.re.is_point() and self.im.is_point()

    def contains(self, re, im) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def excludes_zero(self) -> bool:
        return not self.contains_zero()

    def intersects(self, other: "ComplexEnclosure") -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def subset_of(self, other: "ComplexEnclosure") -> bool:
        return self.re.subset_of(other.re) and self.im.subset_of(other.im)

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def inflate(self, radius: Number) -> "ComplexEnclosure":
        return ComplexEnclosure(self.re.inflate(radius), self.im.inflate(radius))

    def rounded(self, bits: int) -> "ComplexEnclosure":
        return ComplexEnclosure(self.re.rounded(bits), self.im.rounded(bits))

    def conj(self) -> "ComplexEnclosure":
        return ComplexEnclosure(self.re, -self.im)

    def abs_sq(self) -> RealEnclosure:
        return self.re.sqr() + self.im.sqr()

    def abs_lower(self, bits: int = 64) -> Fraction:
        """Rational lower bound on inf |z| over the rectangle.

        The closest point to the origin has coordinates (re.mig(), im.mig()),
        so inf |z| = sqrt(re.mig()**2 + im.mig()**2), rounded down.
        """
        return sqrt_lower(self.re.mig() ** 2 + self.im.mig() ** 2, bits)

    def abs_upper(self, bits: int = 64) -> Fraction:
        return sqrt_upper(self.re.mag() ** 2 + self.im.mag() ** 2, bits)

    def l1_upper(self) -> Fraction:
        """sup (|Re z| + |Im z|) over the rectangle, exact."""
        return self.re.mag() + self.im.mag()

    def __neg__(self) -> "ComplexEnclosure":
        return ComplexEnclosure(-self.re, -self.im)

    def __add__(self, other) -> "ComplexEnclosure":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ComplexEnclosure(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexEnclosure":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ComplexEnclosure(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "ComplexEnclosure":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ComplexEnclosure":
        if isinstance(other, (int, Fraction, RealEnclosure)):
            return ComplexEnclosure(self.re * other, self.im * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexEnclosure(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def reciprocal(self) -> "ComplexEnclosure":
        n = self.abs_sq()
        if n.contains_zero():
            raise DivisorContainsZero(f"|divisor|^2 = {n!r} contains 0")
        inv = n.reciprocal()
        return ComplexEnclosure(self.re * inv, -self.im * inv)

    def __truediv__(self, other) -> "ComplexEnclosure":
        if isinstance(other, (int, Fraction, RealEnclosure)):
            return ComplexEnclosure(self.re / other, self.im / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "ComplexEnclosure":
        return self._coerce(other) / self

    def sqr(self) -> "ComplexEnclosure":
        a, b = self.re, self.im
        return ComplexEnclosure(a.sqr() - b.sqr(), (a * b) * 2)

    def __pow__(self, e: int) -> "ComplexEnclosure":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (self ** -e).reciprocal()
        result = ComplexEnclosure(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.sqr()
        return result


# -- constants ----------------------------------------------------------------

def _arctan_inv_bracket(x: int, tol: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """Bracket arctan(1/x) by consecutive alternating partial sums.

    Returns (lo, hi, next_term) where next_term bounds the bracket width.
    """
    s = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        s_next = s + term if k % 2 == 0 else s - term
        nxt = Fraction(1, (2 * k + 3) * x ** (2 * k + 3))
        if nxt < tol:
            other = s_next - nxt if k % 2 == 0 else s_next + nxt
            return min(s_next, other), max(s_next, other), nxt
        s = s_next
        k += 1


@lru_cache(maxsize=None)
def enclose_pi(bits: int) -> RealEnclosure:
    """Enclosure of pi of width <= 2**-bits via Machin's formula.

    pi = 16 arctan(1/5) - 4 arctan(1/239); each arctan is bracketed by two
    consecutive partial sums of its alternating Taylor series.
    """
    if bits < 8:
        raise ValueError("bits must be >= 8")
    tol = Fraction(1, 1 << (bits + 6))
    lo5, hi5, _ = _arctan_inv_bracket(5, tol)
    lo239, hi239, _ = _arctan_inv_bracket(239, tol)
    lo = 16 * lo5 - 4 * hi239
    hi = 16 * hi5 - 4 * lo239
    return RealEnclosure(round_down(lo, bits + 2), round_up(hi, bits + 2))


@lru_cache(maxsize=None)
def enclose_sqrt3(bits: int) -> RealEnclosure:
    if bits < 8:
        raise ValueError("bits must be >= 8")
    s = math.isqrt(3 << (2 * bits))
    return RealEnclosure(Fraction(s, 1 << bits), Fraction(s + 1, 1 << bits))


def exp_enclosure(z: ComplexEnclosure, terms: int, bits: int | None = None) -> ComplexEnclosure:
    """Enclosure of e**z by the degree-``terms`` Taylor polynomial plus remainder.

    With s >= sup|z| and s < terms + 2 the Lagrange-type tail
    sum_{n>terms} s**n/n! is at most s**(terms+1)/(terms+1)! / (1 - s/(terms+2)),
    which inflates both components.  ``bits`` enables outward rounding of the
    running sum; None keeps everything exact.
    """
    if terms < 1:
        raise ValueError("terms must be positive")
    s = z.abs_upper(64)
    if s >= terms + 2:
        raise RemainderDiverges(f"sup|z| <= {float(s):.4g} is not < terms + 2 = {terms + 2}")
    # Horner: 1 + z(1 + z/2(1 + z/3(...)))
    acc = ComplexEnclosure(1)
    for n in range(terms, 0, -1):
        acc = acc * z / n + 1
        if bits is not None:
            acc = acc.rounded(bits)
    radius = s ** (terms + 1) / math.factorial(terms + 1) / (1 - s / (terms + 2))
    if radius:
        if bits is not None:
            radius = round_up(radius, bits)
        acc = acc.inflate(radius)
    return acc


# -- algebraic points ---------------------------------------------------------

class Base(enum.Enum):
    I = "i"
    RHO = "rho"


class Form(enum.Enum):
    BASE = "base"
    INVERTED = "inv"


@dataclass(frozen=True)
class QuadNumber:
    """Exact element a + b*zeta of Q(i) or Q(rho).

    zeta**2 = -1 for i and zeta**2 = -zeta - 1 for rho = e^{2 pi i/3}.
    """

    a: Fraction
    b: Fraction
    base: Base

    @classmethod
    def of(cls, a: Number, b: Number, base: Base) -> "QuadNumber":
        return cls(Fraction(a), Fraction(b), base)

    def _lift(self, other) -> "QuadNumber":
        if isinstance(other, QuadNumber):
            if other.base is not self.base:
                raise ValueError("mixed quadratic fields")
            return other
        return QuadNumber(Fraction(other), Fraction(0), self.base)

    def __add__(self, other) -> "QuadNumber":
        o = self._lift(other)
        return QuadNumber(self.a + o.a, self.b + o.b, self.base)

    __radd__ = __add__

    def __neg__(self) -> "QuadNumber":
        return QuadNumber(-self.a, -self.b, self.base)

    def __sub__(self, other) -> "QuadNumber":
        return self + (-self._lift(other))

    def __mul__(self, other) -> "QuadNumber":
        o = self._lift(other)
        a, b, c, d = self.a, self.b, o.a, o.b
        if self.base is Base.I:
            return QuadNumber(a * c - b * d, a * d + b * c, self.base)
        # zeta^2 = -zeta - 1
        return QuadNumber(a * c - b * d, a * d + b * c - b * d, self.base)

    __rmul__ = __mul__

    def conj(self) -> "QuadNumber":
        if self.base is Base.I:
            return QuadNumber(self.a, -self.b, self.base)
        # conj(rho) = rho**2 = -1 - rho
        return QuadNumber(self.a - self.b, -self.b, self.base)

    def norm(self) -> Fraction:
        n = self * self.conj()
        assert n.b == 0
        return n.a

    def inverse(self) -> "QuadNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return QuadNumber(c.a / n, c.b / n, self.base)

    def __truediv__(self, other) -> "QuadNumber":
        return self * self._lift(other).inverse()

    def __pow__(self, e: int) -> "QuadNumber":
        if e < 0:
            return self.inverse() ** -e
        result = QuadNumber(Fraction(1), Fraction(0), self.base)
        for _ in range(e):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def enclosure(self, bits: int = 128) -> ComplexEnclosure:
        if self.base is Base.I:
            return ComplexEnclosure(self.a, self.b)
        half_sqrt3 = enclose_sqrt3(bits) / 2
        return ComplexEnclosure(RealEnclosure(self.a - self.b / 2), half_sqrt3 * self.b)


def zeta(base: Base) -> QuadNumber:
    return QuadNumber(Fraction(0), Fraction(1), base)


@dataclass(frozen=True)
class AlgebraicPoint:
    """tau = zeta (BASE) or tau = -1/(zeta + k) (INVERTED), zeta in {i, rho}.

    Negative shifts are allowed: relocation targets have the form
    -1/(zeta + k - N).
    """

    base: Base
    k: int = 0
    form: Form = Form.INVERTED

    def __post_init__(self):
        if self.form is Form.BASE and self.k != 0:
            raise ValueError("BASE points carry no shift")

    @classmethod
    def base_point(cls, base: Base) -> "AlgebraicPoint":
        return cls(base, 0, Form.BASE)

    def value(self) -> QuadNumber:
        z = zeta(self.base)
        if self.form is Form.BASE:
            return z
        return -(z + self.k).inverse()

    def label(self) -> str:
        z = "i" if self.base is Base.I else "rho"
        if self.form is Form.BASE:
            return z
        if self.k == 0:
            return f"-1/{z}"
        sign = "+" if self.k > 0 else "-"
        return f"-1/({z}{sign}{abs(self.k)})"

    def spec(self) -> str:
        """Round-trippable CLI syntax: base:i, inv:rho+5, inv:i-1."""
        if self.form is Form.BASE:
            return f"base:{self.base.value}"
        return f"inv:{self.base.value}{self.k:+d}"

    def __str__(self) -> str:
        return self.label()


def point_enclosure(p: AlgebraicPoint, bits: int = 128) -> ComplexEnclosure:
    """Enclosure of tau; exact (zero width) for base-i points."""
    if bits < 8:
        raise ValueError("bits must be >= 8")
    return p.value().enclosure(bits)
