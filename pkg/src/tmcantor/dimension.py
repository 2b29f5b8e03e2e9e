"""Hausdorff dimension of ``Gamma_{q,m1} ∩ (Gamma_{q,m2} + t)`` for ``t`` with a unique
expansion, and the sets of values it takes.

Dimensions of eventually periodic expansions are exact :class:`LogLinearValue`
objects; floating point only appears when a value is evaluated at a base.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import mpmath

from .bases import critical_base_qc, locate_base, BaseLocation
from .expansions import QuasiGreedyReference, is_unique_expansion, UNIQUE
from .frequency import symbol_fractions
from .mirror import lambda_prefix
from .reals import PrecisionReal, Undecidable, ball_from_iv, dps_for
from .words import EventuallyPeriodicSeq, format_digits


class NotUniqueError(ValueError):
    """The expansion of ``t`` is not unique, so the branch-count formula does not apply."""


# --- exact log-linear values ------------------------------------------------------

def _factor(n: int) -> Dict[int, int]:
    if n < 1:
        raise ValueError("only positive integers have logarithms here")
    out: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class LogLinearValue:
    """``constant + (sum_a c_a log a) / log q`` with rational ``c_a``.

    Integers are factored into primes, whose logarithms are linearly independent
    over the rationals, so ``==`` is exact symbolic equality for every ``q``.
    """

    terms: Tuple[Tuple[int, Fraction], ...] = ()
    constant: Fraction = Fraction(0)

    @classmethod
    def from_logs(cls, coefficients: Mapping[int, Fraction], constant=0) -> "LogLinearValue":
        acc: Dict[int, Fraction] = {}
        for a, c in coefficients.items():
            for p, e in _factor(int(a)).items():
                acc[p] = acc.get(p, Fraction(0)) + Fraction(c) * e
        terms = tuple(sorted((p, c) for p, c in acc.items() if c != 0))
        return cls(terms, Fraction(constant))

    @classmethod
    def log_ratio(cls, a: int, coefficient=1) -> "LogLinearValue":
        """``coefficient * log a / log q``."""
        return cls.from_logs({a: Fraction(coefficient)})

    @property
    def coefficients(self) -> Dict[int, Fraction]:
        return dict(self.terms)

    def __add__(self, other: "LogLinearValue") -> "LogLinearValue":
        acc = self.coefficients
        for p, c in other.terms:
            acc[p] = acc.get(p, Fraction(0)) + c
        return LogLinearValue.from_logs(acc, self.constant + other.constant)

    def __neg__(self) -> "LogLinearValue":
        return LogLinearValue(tuple((p, -c) for p, c in self.terms), -self.constant)

    def __sub__(self, other: "LogLinearValue") -> "LogLinearValue":
        return self + (-other)

    def scale(self, factor) -> "LogLinearValue":
        factor = Fraction(factor)
        return LogLinearValue.from_logs({p: c * factor for p, c in self.terms}, self.constant * factor)

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.terms and self.constant == 0

    def ratio_to(self, other: "LogLinearValue") -> Optional[Fraction]:
        """The rational ``r`` with ``self == r * other``, if there is one."""
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        keys = set(self.coefficients) | set(other.coefficients)
        pairs = [(self.coefficients.get(k, Fraction(0)), other.coefficients.get(k, Fraction(0))) for k in keys]
        pairs.append((self.constant, other.constant))
        r = None
        for a, b in pairs:
            if b == 0:
                if a != 0:
                    return None
                continue
            if r is None:
                r = a / b
            elif a != r * b:
                return None
        return r

    def evaluate(self, q) -> PrecisionReal:
        """Enclosure of the value at base ``q``."""
        q = PrecisionReal.coerce(q)
        if q.lo <= 1:
            raise ValueError("base must exceed 1")
        with mpmath.workdps(dps_for(max(q.radius, Fraction(1, 10**30)))):
            iv = mpmath.iv
            iv.dps = mpmath.mp.dps
            num = iv.mpf(0)
            for p, c in self.terms:
                num += iv.mpf(c.numerator) / c.denominator * iv.log(p)
            val = num / iv.log(q.interval()) + iv.mpf(self.constant.numerator) / self.constant.denominator
            return ball_from_iv(val)

    def __float__(self) -> float:
        raise TypeError("evaluate at a base first")

    def render(self, q_text: str = "q") -> str:
        parts = []
        for p, c in self.terms:
            coef = "" if c == 1 else ("-" if c == -1 else f"({c})·")
            parts.append(f"{coef}log{p}")
        const = "" if self.constant == 0 else str(self.constant)
        if not parts:
            return const or "0"
        logq = f"log{q_text}" if q_text[:1].isdigit() or q_text.startswith("(") else f"log {q_text}"
        body = parts[0] if len(parts) == 1 else "(" + " + ".join(parts).replace("+ -", "- ") + ")"
        out = f"{body}/{logq}"
        return f"{const} + {out}" if const else out

    def __str__(self) -> str:
        return self.render()


ZERO = LogLinearValue()
ONE = LogLinearValue(constant=Fraction(1))


# --- branch counts and the periodic formula ------------------------------------------

def branch_count(t: int, m1: int, m2: int) -> int:
    """Number of digits ``x`` with ``0 <= x <= m1`` and ``0 <= x - t <= m2``."""
    if m1 < m2:
        raise ValueError("need m1 >= m2")
    if not -m2 <= t <= m1:
        raise ValueError(f"digit {t} outside {{{-m2}..{m1}}}")
    if t < 0:
        return m2 + 1 + t
    if t <= m1 - m2:
        return m2 + 1
    return m1 + 1 - t


def _check_cantor_regime(q: PrecisionReal, m1: int):
    if not q.lo - 1 > m1:
        raise ValueError(f"need q - 1 > m1 = {m1} (got q = {q})")


def _require_unique(s: EventuallyPeriodicSeq, q, m1: int, m2: int):
    verdict = is_unique_expansion(s, q, m1, m2)
    if verdict.verdict == UNIQUE:
        return verdict
    if verdict.verdict == "undecided":
        raise Undecidable(f"uniqueness of {s} undecided: {verdict.witness}")
    raise NotUniqueError(f"{s} is not a unique expansion in base {q}: {verdict.witness}")


def period_dimension(period: Sequence[int], m1: int, m2: int) -> LogLinearValue:
    """Average of ``log n_j / log q`` over one period."""
    counts: Dict[int, Fraction] = {}
    for t in period:
        n = branch_count(t, m1, m2)
        counts[n] = counts.get(n, Fraction(0)) + Fraction(1, len(period))
    return LogLinearValue.from_logs(counts)


def dimension_of_periodic(s: EventuallyPeriodicSeq, q, m1: int, m2: int,
                          check_unique: bool = True) -> LogLinearValue:
    """Dimension for an eventually periodic unique expansion ``s`` of ``t``.

    The running averages of ``log n_j`` converge to the period average, which the
    preperiod does not affect.
    """
    q = PrecisionReal.coerce(q)
    if m1 < m2:
        raise ValueError("need m1 >= m2")
    _check_cantor_regime(q, m1)
    if check_unique:
        _require_unique(s, q, m1, m2)
    return period_dimension(s.period, m1, m2)


@dataclass(frozen=True)
class DimensionEstimate:
    """Finite-horizon view of ``s_k = sum_{j<=k} log n_j / (k log q)``.

    ``estimate`` is the infimum of ``s_k`` over ``window``; it estimates the liminf
    and is not a proof of its value.
    """

    trace: Tuple[float, ...]
    estimate: PrecisionReal
    horizon: int
    window: Tuple[int, int]
    argmin: int


def dimension_estimate(digit_stream: Iterable[int], q, m1: int, m2: int, horizon: int) -> DimensionEstimate:
    q = PrecisionReal.coerce(q)
    _check_cantor_regime(q, m1)
    if horizon < 1:
        raise ValueError("horizon must be positive")
    stream = iter(digit_stream)
    counts = [0] * (m1 + 2)
    history: List[Tuple[int, ...]] = []
    trace: List[float] = []
    logq = math.log(float(q.center))
    logs = [0.0] + [math.log(n) for n in range(1, m1 + 2)]
    total = 0.0
    for k in range(1, horizon + 1):
        try:
            t = next(stream)
        except StopIteration:
            raise ValueError(f"stream ended after {k - 1} digits, horizon is {horizon}") from None
        n = branch_count(t, m1, m2)
        counts[n] += 1
        total += logs[n]
        trace.append(total / (k * logq))
        if k >= max(1, horizon // 2):
            history.append(tuple(counts))
    lo = max(1, horizon // 2)
    best = min(range(lo, horizon + 1), key=lambda k: trace[k - 1])
    snapshot = history[best - lo]
    value = LogLinearValue.from_logs({n: Fraction(c, best) for n, c in enumerate(snapshot) if c and n > 1})
    return DimensionEstimate(tuple(trace), value.evaluate(q), horizon, (lo, horizon), best)


# --- closed forms -----------------------------------------------------------------

def sigma(j: int) -> Fraction:
    """``sum_{i=1}^j (-1/2)^i``."""
    return sum((Fraction(-1, 2) ** i for i in range(1, j + 1)), Fraction(0))


def tm_dimension_formula(m: int, j: int) -> LogLinearValue:
    """``(log m - sigma_j log((m + 1) / m)) / log q``; ``j = 0`` gives ``log m / log q``."""
    if m < 1 or j < 0:
        raise ValueError("need m >= 1 and j >= 0")
    s = sigma(j)
    return LogLinearValue.from_logs({m: 1 + s, m + 1: -s})


def kl_point_dimension(m: int) -> LogLinearValue:
    """``log(m^2 (m + 1)) / (3 log q)``: the value at the Thue--Morse point of ``q_KL``."""
    return LogLinearValue.from_logs({m: Fraction(2, 3), m + 1: Fraction(1, 3)})


def cantor_bounds(m: int) -> Tuple[LogLinearValue, LogLinearValue]:
    """``(c1, c2) = (log m / log q, log(m + 1) / log q)``."""
    return LogLinearValue.log_ratio(m), LogLinearValue.log_ratio(m + 1)


# --- constructive families ----------------------------------------------------------

def pm_zero_sequence(lam, m: int = 1) -> EventuallyPeriodicSeq:
    """Periodic ``((1, -1)^a 0^b)^inf`` over ``{-m..m}`` whose zero digits have density ``lam``."""
    lam = Fraction(lam)
    if not 0 <= lam <= 1:
        raise ValueError("lambda must lie in [0, 1]")
    if lam == 0:
        return EventuallyPeriodicSeq.periodic((1, -1), -m, m)
    if lam == 1:
        return EventuallyPeriodicSeq.periodic((0,), -m, m)
    p, r = lam.numerator, lam.denominator
    # b / (2a + b) = p / r  <=>  b (r - p) = 2 a p
    g = math.gcd(r - p, 2 * p)
    a, b = (r - p) // g, 2 * p // g
    return EventuallyPeriodicSeq.periodic((1, -1) * a + (0,) * b, -m, m)


def self_similar_family(m: int, q, mesh: int) -> List[Tuple[EventuallyPeriodicSeq, LogLinearValue]]:
    """Periodic expansions with self-similar intersections whose dimensions are
    ``lam c2 + (1 - lam) c1`` for ``lam = 0, 1/mesh, ..., 1``."""
    q = PrecisionReal.coerce(q)
    if mesh < 1:
        raise ValueError("mesh must be positive")
    qc = critical_base_qc(m)
    if not (q.label == ("qc", m) or q.compare(qc) >= 0):
        raise ValueError(f"need q >= q_c = {qc}")
    out = []
    for i in range(mesh + 1):
        s = pm_zero_sequence(Fraction(i, mesh), m)
        if is_self_similar(s, m, q) != "yes":
            raise AssertionError(f"{s} should give a self-similar intersection")
        out.append((s, dimension_of_periodic(s, q, m, m)))
    return out


SUBSHIFT_SYMBOLS = ("a", "b", "a_bar", "b_bar")
ADJACENCY = (
    (0, 1, 1, 0),
    (0, 0, 1, 0),
    (1, 0, 0, 1),
    (1, 0, 0, 0),
)


def transition_allowed(x: str, y: str) -> bool:
    return bool(ADJACENCY[SUBSHIFT_SYMBOLS.index(x)][SUBSHIFT_SYMBOLS.index(y)])


def subshift_blocks(mu: int, n: int) -> Dict[str, Tuple[int, ...]]:
    """``a_n = mu lambda_1 ... lambda_{2^n - 1}``, ``b_n = (mu - 1) lambda_1 ...`` and
    their reflections ``c -> 2 mu - c``."""
    if n < 1:
        raise ValueError("n must be positive")
    lam = lambda_prefix(mu, 2**n - 1) if 2**n - 1 >= 1 else ()
    a = (mu,) + lam
    b = (mu - 1,) + lam
    bar = lambda w: tuple(2 * mu - c for c in w)
    return {"a": a, "b": b, "a_bar": bar(a), "b_bar": bar(b)}


def block_path(blocks: Dict[str, Tuple[int, ...]], path: Sequence[str]) -> Tuple[int, ...]:
    return tuple(itertools.chain.from_iterable(blocks[x] for x in path))


W1_PATH = ("b", "a_bar", "b_bar", "a")
W2_PATH = ("a_bar", "a")
_CYCLES = (("a", "a_bar"), ("a", "b", "a_bar"), ("a_bar", "b_bar", "a"), W1_PATH, W2_PATH, W1_PATH + W2_PATH)


def subshift_level(m: int, q, max_n: int = 10) -> int:
    """Smallest ``n`` for which the cycles of the block graph give unique expansions at ``q``.

    This is an empirical check on a finite set of cycles, used as the default block size.
    """
    q = PrecisionReal.coerce(q)
    for n in range(1, max_n + 1):
        blocks = subshift_blocks(0, n)
        ok = True
        for cyc in _CYCLES:
            s = EventuallyPeriodicSeq.periodic(block_path(blocks, cyc), -m, m)
            if not is_unique_expansion(s, q, m, m).is_unique:
                ok = False
                break
        if ok:
            return n
    raise Undecidable(f"no block size n <= {max_n} passes the admissibility checks at q = {q}")


@dataclass(frozen=True)
class InterpolationBlocks:
    n: int
    w1: Tuple[int, ...]
    w2: Tuple[int, ...]
    d2_w1: Fraction
    d2_w2: Fraction


def interpolation_blocks(m: int, q, n: Optional[int] = None) -> InterpolationBlocks:
    """``w1 = b a_bar b_bar a`` and ``w2 = a_bar a`` for the symmetric alphabet ``{-m..m}``."""
    if n is None:
        n = subshift_level(m, q)
    blocks = subshift_blocks(0, n)
    w1, w2 = block_path(blocks, W1_PATH), block_path(blocks, W2_PATH)
    return InterpolationBlocks(n, w1, w2, symbol_fractions(w1, 0)[1], symbol_fractions(w2, 0)[1])


def block_mixing_sequence(blocks: InterpolationBlocks, d, m: int) -> EventuallyPeriodicSeq:
    """Periodic ``(w1^a w2^b)^inf`` whose fraction of zero digits is exactly ``d``."""
    d = Fraction(d)
    d1, d2 = blocks.d2_w1, blocks.d2_w2
    if not d1 <= d <= d2:
        raise ValueError(f"target {d} outside [{d1}, {d2}]")
    L1, L2 = len(blocks.w1), len(blocks.w2)
    if d == d1:
        a, b = 1, 0
    elif d == d2:
        a, b = 0, 1
    else:
        ratio = Fraction(L2) * (d2 - d) / (Fraction(L1) * (d - d1))
        a, b = ratio.numerator, ratio.denominator
    return EventuallyPeriodicSeq.periodic(blocks.w1 * a + blocks.w2 * b, -m, m)


# --- self-similarity ----------------------------------------------------------------

def is_self_similar(s: EventuallyPeriodicSeq, m: int, q, budget: int = 64) -> str:
    """``"yes"`` when ``(m - |t_i|) = I J^inf`` with ``|I| = |J|`` and ``I <= J``.

    Candidate lengths are the multiples of the period that cover the preperiod. All
    candidates share the same ``J`` prefix, so a strict defect ``I > J`` inside the
    first candidate persists for every longer one and the answer is ``"no"``.
    """
    q = PrecisionReal.coerce(q)
    if not q.lo > m + 1:
        raise ValueError(f"need q > m + 1 = {m + 1}")
    _require_unique(s, q, m, m)
    u = s.map_digits(lambda t: m - abs(t), 0, m)
    p, r = len(u.preperiod), len(u.period)
    L = r * max(1, -(-p // r))
    for _ in range(budget):
        I = u.prefix(L)
        J = tuple(u.digit(i) for i in range(L + 1, 2 * L + 1))
        diff = next((k for k in range(L) if I[k] != J[k]), None)
        if diff is None or I[diff] < J[diff]:
            return "yes"
        if I[diff] > J[diff]:
            return "no"
        L += r
    return "not_found_within_budget"


# --- the dimension set ----------------------------------------------------------------

@dataclass(frozen=True)
class DimensionSetDescription:
    """Description of the set of dimensions over all ``t`` with a unique expansion.

    ``complete`` is True when ``values`` (plus ``family_from``) is the whole set and
    False when the set is only known to contain them. ``family_from = j0`` adds
    ``tm_dimension_formula(m, j)`` for every ``j >= j0``. ``interval`` is a closed
    interval contained in the set; ``gap`` is a width ``delta`` such that no value lies
    in ``(c2 - delta, c2)``.
    """

    case: str
    values: Tuple[LogLinearValue, ...]
    complete: bool
    interval: Optional[Tuple[LogLinearValue, LogLinearValue]] = None
    family_from: Optional[int] = None
    m: Optional[int] = None
    location: Optional[BaseLocation] = None
    gap: Optional[LogLinearValue] = None
    notes: Tuple[str, ...] = ()


def _dedupe(values: Iterable[LogLinearValue]) -> Tuple[LogLinearValue, ...]:
    out: List[LogLinearValue] = []
    for v in values:
        if v not in out:
            out.append(v)
    return tuple(out)


def gap_run_length(m: int, q) -> int:
    """``k`` such that the quasi-greedy expansion of ``(q - m - 1)/(q - 1)`` over
    ``{-m..m}`` starts with ``1 0^k l``, ``l < 0``; requires ``m + 1 < q < q_c``."""
    ref = QuasiGreedyReference(1, q, 2 * m)
    if ref.digit(1) - m != 1:
        raise ValueError("expected a leading digit 1")
    k, i = 0, 2
    while True:
        d = ref.digit(i) - m
        if d < 0:
            return k
        if d > 0:
            raise ValueError("q is not below q_c")
        k += 1
        i += 1


def dimension_set(m1: int, m2: int, q, tol=None, ladder_budget: int = 16) -> DimensionSetDescription:
    q = PrecisionReal.coerce(q)
    if m1 < m2:
        m1, m2 = m2, m1
    if q.lo <= 1:
        raise ValueError("q must exceed 1")
    c_small = LogLinearValue.log_ratio(m2 + 1)
    if q.compare(m2 + 1) <= 0:
        return DimensionSetDescription("both_intervals", (ZERO, ONE), True)
    if q.compare(m1 + 1) <= 0:
        return DimensionSetDescription("one_interval", (ZERO, c_small), True)
    if m1 > m2:
        return DimensionSetDescription("asymmetric_cantor", (c_small,), False)
    m = m1
    c1, c2 = cantor_bounds(m)
    loc = locate_base(q, 2 * m, tol, ladder_budget)
    gap = None
    qc = critical_base_qc(m, tol)
    below_qc = q.label != ("qc", m) and q.compare(qc) < 0
    if below_qc:
        gap = (c2 - c1).scale(Fraction(1, gap_run_length(m, q) + 1))
    if loc.case == "between":
        k = loc.k
        vals = _dedupe([ZERO, c2] + [tm_dimension_formula(m, j) for j in range(0, k - 1)])
        return DimensionSetDescription("symmetric_ladder", vals, True, m=m, location=loc, gap=gap)
    if loc.case == "at_qKL":
        vals = _dedupe([ZERO, c2, kl_point_dimension(m)])
        return DimensionSetDescription("symmetric_kl", vals, True, family_from=0, m=m, location=loc, gap=gap)
    if loc.case == "above_qKL":
        if not below_qc:
            return DimensionSetDescription("symmetric_above_kl", (), False, interval=(c1, c2),
                                           m=m, location=loc,
                                           notes=("interval realised by (1,-1)/0 block sequences",))
        blocks = interpolation_blocks(m, q)
        span = c2 - c1
        lo = c1 + span.scale(blocks.d2_w1)
        hi = c1 + span.scale(blocks.d2_w2)
        return DimensionSetDescription("symmetric_above_kl", (), False, interval=(lo, hi), m=m,
                                       location=loc, gap=gap,
                                       notes=(f"interval realised by mixing subshift blocks, n = {blocks.n}",))
    raise AssertionError(f"unexpected location {loc}")  # q > m + 1 = q_1 here
