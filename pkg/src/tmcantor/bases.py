"""Critical bases for the alphabet ``{0, ..., M}``: the ladder ``q_1 < q_2 < ...``,
its limit ``q_KL`` and the critical base ``q_c`` of the symmetric alphabet.

Roots are located by bisection on the (monotone) digit series, carried out in
floating point and then certified by exact rational sign checks at the two ends of
the returned bracket.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import mpmath

from .mirror import kl_digits
from .reals import PrecisionReal, Undecidable, default_tolerance, dps_for, mpf_to_fraction
from .words import Word, bump, reflect

DEFAULT_MAX_K = 16


def _tol(tol) -> Fraction:
    return default_tolerance() if tol is None else Fraction(tol)


# --- exact sign evaluations -------------------------------------------------

def _word_excess_sign(digits: Sequence[int], q: Fraction) -> int:
    """Sign of ``sum_i digits[i] q^-i - 1`` for rational ``q > 0``."""
    a, c = q.numerator, q.denominator
    acc, cp = 0, 1
    for w in digits:
        cp *= c
        acc = acc * a + w * cp
    diff = acc - a ** len(digits)
    return (diff > 0) - (diff < 0)


def _series_bounds_sign(digits: Sequence[int], max_digit: int, q: Fraction) -> Tuple[int, int]:
    """Signs of ``S_T(q) - 1`` and ``S_T(q) + tail(q) - 1`` where ``S_T`` is the truncated
    series and ``tail = M q^-T / (q - 1)`` bounds the remaining terms."""
    a, c = q.numerator, q.denominator
    T = len(digits)
    acc, cp = 0, 1
    for w in digits:
        cp *= c
        acc = acc * a + w * cp
    aT = a**T
    low = acc - aT
    # (acc + M c^{T+1}/(a-c)) vs a^T, scaled by (a - c) > 0
    high = acc * (a - c) + max_digit * cp * c - aT * (a - c)
    sgn = lambda x: (x > 0) - (x < 0)
    return sgn(low), sgn(high)


# --- bisection ----------------------------------------------------------------

def _float_bisect(f: Callable, lo, hi, width):
    """Bisection for a decreasing ``f`` with ``f(lo) > 0 > f(hi)``; mpf arithmetic."""
    while hi - lo > width:
        mid = (lo + hi) / 2
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _certified_root(f_mp: Callable, lo_ok: Callable[[Fraction], bool],
                    hi_ok: Callable[[Fraction], bool], lo: Fraction, hi: Fraction,
                    tol: Fraction, label=None, exact_root: Optional[Callable] = None) -> PrecisionReal:
    with mpmath.workdps(dps_for(tol)):
        width = mpmath.mpf(tol.numerator) / tol.denominator / 8
        a, b = _float_bisect(f_mp, mpmath.mpf(lo.numerator) / lo.denominator,
                             mpmath.mpf(hi.numerator) / hi.denominator, width)
        a, b = mpf_to_fraction(a), mpf_to_fraction(b)
    if exact_root is not None:
        guess = ((a + b) / 2).limit_denominator(10**6)
        if a - tol <= guess <= b + tol and exact_root(guess):
            return PrecisionReal(guess, 0, label)
    step = max(b - a, tol / 64)
    for _ in range(64):
        if lo_ok(a):
            break
        a -= step
        step *= 2
    else:
        raise Undecidable("could not certify lower end of root bracket")
    step = max(b - a, tol / 64)
    for _ in range(64):
        if hi_ok(b):
            break
        b += step
        step *= 2
    else:
        raise Undecidable("could not certify upper end of root bracket")
    ball = PrecisionReal.from_interval(a, b, label)
    if ball.radius > tol:
        raise Undecidable(f"root bracket radius {float(ball.radius):.3g} exceeds tolerance")
    return ball


def _series_mp(digits: Sequence[int]):
    def f(q):
        x = 1 / q
        s = mpmath.mpf(0)
        for w in reversed(digits):
            s = x * (w + s)
        return s - 1
    return f


# --- closed forms ---------------------------------------------------------------

def _quadratic_root(b: int, c: int, tol: Fraction, label) -> PrecisionReal:
    """Larger root of ``q^2 - b q - c`` (with ``c`` possibly negative), certified."""
    def sign(q: Fraction) -> int:
        v = q * q - b * q - c
        return (v > 0) - (v < 0)

    with mpmath.workdps(dps_for(tol)):
        r = (b + mpmath.sqrt(b * b + 4 * c)) / 2
        center = mpf_to_fraction(r)
    eps = tol / 4
    lo, hi = center - eps, center + eps
    if sign(lo) >= 0 or sign(hi) <= 0:
        raise Undecidable("closed-form root failed certification")
    return PrecisionReal.from_interval(lo, hi, label)


def generalized_golden_ratio(max_digit: int, tol=None) -> PrecisionReal:
    """``q_1``: ``m + 1`` for ``M = 2m`` and ``(m + sqrt(m^2 + 4m)) / 2`` for ``M = 2m - 1``."""
    if max_digit < 1:
        raise ValueError("max_digit must be positive")
    label = ("q", max_digit, 1)
    if max_digit % 2 == 0:
        return PrecisionReal(max_digit // 2 + 1, 0, label)
    m = (max_digit + 1) // 2
    return _quadratic_root(m, m, _tol(tol), label)


def critical_base_qc(m: int, tol=None) -> PrecisionReal:
    """``q_c = (m + 2 + sqrt(m(m + 4))) / 2``, the root of ``q^2 - (m + 2) q + 1``."""
    if m < 1:
        raise ValueError("m must be positive")
    tol = _tol(tol)
    q = _quadratic_root(m + 2, -1, tol, ("qc", m))
    # (m+1)/q + m/(q(q-1)) = 1 at q_c
    with mpmath.workdps(dps_for(tol)):
        x = q.mpf()
        residual = (m + 1) / x + m / (x * (x - 1)) - 1
    if abs(residual) > mpmath.mpf(tol.numerator) / tol.denominator * 10 * (m + 2):
        raise Undecidable("q_c residual check failed")
    return q


# --- ladder -----------------------------------------------------------------------

def omega_word(max_digit: int, k: int) -> Word:
    """``omega_k`` with ``omega_{k+1} = (omega_k reflect(omega_k))^+``.

    ``omega_0`` is ``m`` for ``M = 2m - 1`` and ``m + 1`` for ``M = 2m``.
    """
    if max_digit < 1:
        raise ValueError("max_digit must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    m, odd = (max_digit + 1) // 2, max_digit % 2 == 1
    if k == 0:
        return Word((m,) if odd else (m + 1,), max_digit)
    w = Word((m, m) if odd else (m + 1,), max_digit)
    for _ in range(k - 1):
        w = bump(w + reflect(w), +1)
    return w


def base_of_word(w: Word, tol=None, label=None) -> PrecisionReal:
    """The base ``q`` in ``(1, M + 1]`` with ``sum_i w_i q^-i = 1``."""
    tol = _tol(tol)
    digits = w.digits
    if not digits or digits[0] < 1 or digits[-1] < 1:
        raise ValueError("word must be nonempty with nonzero first and last digit")
    top = Fraction(w.max_digit + 1)
    if _word_excess_sign(digits, top) > 0:
        raise ValueError(f"no root in (1, {top}]: series exceeds 1 at q = M + 1")
    if sum(digits) <= 1:
        raise ValueError("no root in (1, M + 1]: series does not exceed 1 near q = 1")
    if _word_excess_sign(digits, top) == 0:
        return PrecisionReal(top, 0, label)
    return _certified_root(
        _series_mp(digits),
        lambda q: _word_excess_sign(digits, q) > 0,
        lambda q: _word_excess_sign(digits, q) < 0,
        Fraction(1), top, tol, label,
        exact_root=lambda q: q > 1 and _word_excess_sign(digits, q) == 0,
    )


@lru_cache(maxsize=512)
def ladder_base(max_digit: int, k: int, tol=None) -> PrecisionReal:
    """``q_k``: the base in which ``omega_k 0^inf`` is the greedy expansion of 1."""
    if k < 1:
        raise ValueError("k must be at least 1")
    tol = _tol(tol)
    if k == 1:
        return generalized_golden_ratio(max_digit, tol)
    return base_of_word(omega_word(max_digit, k), tol, label=("q", max_digit, k))


@lru_cache(maxsize=64)
def komornik_loreti_base(max_digit: int, tol=None) -> PrecisionReal:
    """Smallest base in which 1 has a unique expansion over ``{0, ..., M}``.

    The defining series is truncated after ``T`` terms; the neglected tail is at most
    ``M q^-T / (q - 1)`` and is accounted for when certifying the bracket.
    """
    if max_digit < 1:
        raise ValueError("max_digit must be positive")
    tol = _tol(tol)
    q1 = float(generalized_golden_ratio(max_digit))
    target = float(tol) / 1000
    T = math.ceil(math.log(max_digit / ((q1 - 1) * target)) / math.log(q1)) + 8
    digits = kl_digits(max_digit, T)

    def lo_ok(q: Fraction) -> bool:
        return _series_bounds_sign(digits, max_digit, q)[0] > 0

    def hi_ok(q: Fraction) -> bool:
        return _series_bounds_sign(digits, max_digit, q)[1] < 0

    lo = generalized_golden_ratio(max_digit, tol).lo
    return _certified_root(_series_mp(digits), lo_ok, hi_ok, lo, Fraction(max_digit + 1),
                           tol, ("qKL", max_digit))


def certified_ladder(max_digit: int, k_max: int, tol=None, finest=Fraction(1, 10**400)):
    """``[q_1, ..., q_kmax, q_KL]`` with consecutive balls disjoint.

    ``q_KL - q_k`` shrinks like ``q^(-2^k)``, so members of overlapping neighbouring
    pairs get half as many digits again until every pair separates (or ``finest`` is
    passed).
    """
    tol = _tol(tol)

    def compute(i, t):
        return ladder_base(max_digit, i + 1, t) if i < k_max else komornik_loreti_base(max_digit, t)

    tols = [tol] * (k_max + 1)
    qs = [compute(i, tol) for i in range(k_max + 1)]
    while True:
        bad = {j for i in range(k_max) if not qs[i].definitely_less(qs[i + 1]) for j in (i, i + 1)}
        if not bad:
            return qs
        for i in bad:
            t = tols[i]
            if t < finest:
                raise Undecidable(f"ladder for M = {max_digit} not separated at tolerance {float(t):.3g}")
            digits = math.ceil(math.log10(t.denominator) - math.log10(t.numerator))
            tols[i] = Fraction(1, 10 ** math.ceil(1.5 * digits))
            qs[i] = compute(i, tols[i])


# --- classification -----------------------------------------------------------

@dataclass(frozen=True)
class BaseLocation:
    """Where ``q`` sits relative to the ladder.

    ``case`` is one of ``"at_or_below_q1"``, ``"between"`` (``q_k < q <= q_{k+1}``),
    ``"at_qKL"`` and ``"above_qKL"``.
    """

    case: str
    k: Optional[int]
    witnesses: Tuple[PrecisionReal, ...]


def _le(q: PrecisionReal, r: PrecisionReal) -> bool:
    c = q.compare(r)
    return c <= 0


def locate_base(q, max_digit: int, tol=None, max_k: int = DEFAULT_MAX_K) -> BaseLocation:
    q = PrecisionReal.coerce(q)
    tol = _tol(tol)
    if q.lo <= 1:
        raise ValueError("q must exceed 1")
    if q.label == ("qKL", max_digit):
        return BaseLocation("at_qKL", None, (q,))
    if q.label is not None and q.label[:2] == ("q", max_digit):
        k = q.label[2]
        if k == 1:
            return BaseLocation("at_or_below_q1", None, (q,))
        return BaseLocation("between", k - 1, (ladder_base(max_digit, k - 1, tol), q))
    q1 = ladder_base(max_digit, 1, tol)
    if _le(q, q1):
        return BaseLocation("at_or_below_q1", None, (q1,))
    qkl = komornik_loreti_base(max_digit, tol)
    if q.definitely_greater(qkl):
        return BaseLocation("above_qKL", None, (qkl,))
    if q.overlaps(qkl):
        raise Undecidable(f"q is within tolerance of q_KL = {qkl}")
    previous = q1
    for k in range(1, max_k):
        nxt = ladder_base(max_digit, k + 1, tol)
        if _le(q, nxt):
            return BaseLocation("between", k, (previous, nxt))
        previous = nxt
    raise Undecidable(f"q lies above q_{max_k}; increase max_k or the precision")
