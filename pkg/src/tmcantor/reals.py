"""Rational balls used to carry bases and values with a certified error radius."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import mpmath

DEFAULT_TOLERANCE = Fraction(1, 10**12)
TOLERANCE_ENV = "TMCANTOR_TOLERANCE"

Number = Union[int, Fraction, str, float]


class Undecidable(ArithmeticError):
    """A comparison or digit decision cannot be settled at the available precision."""


def default_tolerance() -> Fraction:
    raw = os.environ.get(TOLERANCE_ENV)
    if raw:
        return Fraction(raw)
    return DEFAULT_TOLERANCE


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of a binary mpf."""
    man, exp = mpmath.mpf(x).man_exp
    if man == 0:
        return Fraction(0)
    return Fraction(man) * Fraction(2) ** exp


def dps_for(tol: Fraction, extra: int = 15) -> int:
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    digits = math.ceil(-math.log10(tol.numerator) + math.log10(tol.denominator))
    return max(20, digits + extra)


@dataclass(frozen=True)
class PrecisionReal:
    """A real number known to lie in ``[center - radius, center + radius]``.

    ``label`` names a distinguished constant (for instance ``("qKL", 2)``) so that
    callers can recognise it exactly even though only a ball is stored.
    """

    center: Fraction
    radius: Fraction = Fraction(0)
    label: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "center", Fraction(self.center))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    @classmethod
    def exact(cls, x: Number, label=None) -> "PrecisionReal":
        if isinstance(x, float):
            x = repr(x)
        return cls(Fraction(x), Fraction(0), label)

    @classmethod
    def from_mpf(cls, x, radius, label=None) -> "PrecisionReal":
        return cls(mpf_to_fraction(x), Fraction(radius), label)

    @classmethod
    def from_interval(cls, lo: Fraction, hi: Fraction, label=None) -> "PrecisionReal":
        lo, hi = Fraction(lo), Fraction(hi)
        if hi < lo:
            raise ValueError("empty interval")
        return cls((lo + hi) / 2, (hi - lo) / 2, label)

    @classmethod
    def coerce(cls, x) -> "PrecisionReal":
        if isinstance(x, PrecisionReal):
            return x
        return cls.exact(x)

    @property
    def lo(self) -> Fraction:
        return self.center - self.radius

    @property
    def hi(self) -> Fraction:
        return self.center + self.radius

    @property
    def is_exact(self) -> bool:
        return self.radius == 0

    def __float__(self) -> float:
        return float(self.center)

    def mpf(self):
        return mpmath.mpf(self.center.numerator) / self.center.denominator

    def interval(self):
        """mpmath ``iv`` enclosure of the ball (at the current ``iv`` precision)."""
        lo, hi = self.lo, self.hi
        return mpmath.iv.mpf([mpmath.iv.mpf(lo.numerator) / lo.denominator,
                              mpmath.iv.mpf(hi.numerator) / hi.denominator])

    def shifted(self, delta: Number) -> "PrecisionReal":
        return PrecisionReal(self.center + Fraction(delta), self.radius)

    def overlaps(self, other: "PrecisionReal") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def definitely_less(self, other) -> bool:
        other = PrecisionReal.coerce(other)
        return self.hi < other.lo

    def definitely_greater(self, other) -> bool:
        other = PrecisionReal.coerce(other)
        return self.lo > other.hi

    def compare(self, other) -> int:
        """Sign of ``self - other``; raises :class:`Undecidable` if the balls overlap
        and the two values are not the same exact rational."""
        other = PrecisionReal.coerce(other)
        if self.definitely_less(other):
            return -1
        if self.definitely_greater(other):
            return 1
        if self.is_exact and other.is_exact:
            return 0
        raise Undecidable(f"{self} and {other} overlap")

    def format(self, digits: int = 15) -> str:
        with mpmath.workdps(digits + 5):
            return mpmath.nstr(self.mpf(), digits)

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.center)
        return f"{self.format()} ± {float(self.radius):.3g}"


def ball_from_iv(x, label=None) -> PrecisionReal:
    """Convert an mpmath ``iv`` interval to a ball containing it."""
    lo = mpf_to_fraction(x.a)
    hi = mpf_to_fraction(x.b)
    return PrecisionReal.from_interval(lo, hi, label)
