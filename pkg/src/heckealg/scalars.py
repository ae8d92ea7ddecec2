"""Exact scalars: complex numbers with rational real and imaginary parts.

Plain rationals are `fractions.Fraction` throughout the library; this module
adds the complex extension used for Hecke-algebra coefficients, plus exact or
certified-interval absolute values (|re + i*im| is irrational in general).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

#: dyadic precision of interval endpoints for irrational absolute values
ABS_PRECISION_BITS = 40


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class CQ:
    """A complex number with exact rational components."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _as_fraction(self.re))
        object.__setattr__(self, "im", _as_fraction(self.im))

    def __add__(self, other: "CQ") -> "CQ":
        return CQ(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "CQ") -> "CQ":
        return CQ(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "CQ":
        return CQ(-self.re, -self.im)

    def __mul__(self, other) -> "CQ":
        if isinstance(other, CQ):
            return CQ(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        q = _as_fraction(other)
        return CQ(self.re * q, self.im * q)

    __rmul__ = __mul__

    def conj(self) -> "CQ":
        return CQ(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2, always an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


CQ_ZERO = CQ(Fraction(0))
CQ_ONE = CQ(Fraction(1))


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def sqrt_enclosure(q: Fraction, bits: int = ABS_PRECISION_BITS):
    """Return (lo, hi, exact) with lo <= sqrt(q) <= hi and hi - lo <= 2**-bits.

    Exact (lo == hi) whenever q is the square of a rational.
    """
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    p, d = q.numerator, q.denominator
    if _is_square(p) and _is_square(d):
        r = Fraction(math.isqrt(p), math.isqrt(d))
        return r, r, True
    t = 1 << bits
    s = math.isqrt(p * t * t // d)
    return Fraction(s, t), Fraction(s + 1, t), False


@dataclass(frozen=True)
class NormValue:
    """A nonnegative real given exactly or as a certified rational enclosure."""

    lo: Fraction
    hi: Fraction
    exact: bool

    @staticmethod
    def of(q: Fraction) -> "NormValue":
        q = _as_fraction(q)
        return NormValue(q, q, True)

    @staticmethod
    def abs_of(z: CQ) -> "NormValue":
        """|z| for a complex rational; exact when re or im vanishes."""
        if z.im == 0:
            return NormValue.of(abs(z.re))
        if z.re == 0:
            return NormValue.of(abs(z.im))
        lo, hi, exact = sqrt_enclosure(z.abs2())
        return NormValue(lo, hi, exact)

    def __add__(self, other: "NormValue") -> "NormValue":
        return NormValue(self.lo + other.lo, self.hi + other.hi, self.exact and other.exact)

    def scale(self, q: Fraction) -> "NormValue":
        q = _as_fraction(q)
        if q < 0:
            raise ValueError("NormValue scale factor must be nonnegative")
        return NormValue(self.lo * q, self.hi * q, self.exact)

    @property
    def value(self) -> Fraction:
        """The exact value; only meaningful when `exact` is set."""
        if not self.exact:
            raise ValueError("norm is an enclosure, not exact")
        return self.lo

    def __str__(self):
        if self.exact:
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"


NORM_ZERO = NormValue(Fraction(0), Fraction(0), True)
