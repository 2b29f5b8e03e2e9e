"""Quasi-greedy expansions, alphabet shifts and the lexicographic uniqueness test."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

import mpmath

from .bases import omega_word
from .mirror import kl_digits
from .reals import PrecisionReal, Undecidable, ball_from_iv, dps_for
from .words import EventuallyPeriodicSeq, Word, bump, lex_compare_ep

UNIQUE, NOT_UNIQUE, UNDECIDED = "unique", "not_unique", "undecided"


def _exact_quasi_greedy(x: Fraction, q: Fraction, max_digit: int) -> Iterator[Tuple[int, Fraction]]:
    """Yield ``(digit, remainder)`` pairs of the quasi-greedy expansion of ``x``.

    Remainders are kept as integers over ``v * c**n`` to avoid repeated gcds.
    """
    a, c = q.numerator, q.denominator
    R, v = x.numerator, x.denominator
    scale = v
    while True:
        scale *= c
        top = a * R
        if top <= 0:
            raise ValueError("x must be positive")
        d = min(max_digit, (top - 1) // scale)
        R = top - d * scale
        yield d, (Fraction(R, scale) if c == 1 else None)


class QuasiGreedyReference:
    """Lazily extended quasi-greedy expansion of ``x`` in base ``q`` over ``{0, ..., M}``.

    For a ball ``q`` the digits are read off the two extreme bases; by monotonicity
    of quasi-greedy expansions in ``q`` and ``x`` every base in the ball shares the
    digits on which the extremes agree. When the expansion is known to be eventually
    periodic, ``ep`` holds it exactly.
    """

    def __init__(self, x, q, max_digit: int):
        self.x = PrecisionReal.coerce(x)
        self.q = PrecisionReal.coerce(q)
        self.max_digit = max_digit
        self.ep: Optional[EventuallyPeriodicSeq] = None
        self._digits: List[int] = []
        self._kl = False
        if self.q.lo <= 1:
            raise ValueError("base must exceed 1")
        if self.x.lo <= 0:
            raise ValueError("x must be positive")
        self._init_known()
        if self.ep is None and not self._kl:
            if self.x.is_exact and self.q.is_exact:
                self._corners = [_exact_quasi_greedy(self.x.center, self.q.center, max_digit)]
                self._seen: Optional[Dict[Fraction, int]] = {} if self.q.center.denominator == 1 else None
            else:
                self._corners = [_exact_quasi_greedy(self.x.lo, self.q.lo, max_digit),
                                 _exact_quasi_greedy(self.x.hi, self.q.hi, max_digit)]
                self._seen = None

    def _init_known(self):
        label, M = self.q.label, self.max_digit
        if label is None or self.x != PrecisionReal.exact(1):
            return
        if label == ("qc", M // 2) and M % 2 == 0:
            m = M // 2
            self.ep = EventuallyPeriodicSeq((m + 1,), (m,), 0, M)
        elif label[:2] == ("q", M):
            w = bump(omega_word(M, label[2]), -1)
            self.ep = EventuallyPeriodicSeq.periodic(w.digits, 0, M)
        elif label == ("qKL", M):
            self._kl = True

    def digit(self, i: int) -> int:
        """The ``i``-th digit (1-based)."""
        if self.ep is not None:
            return self.ep.digit(i)
        if self._kl:
            if len(self._digits) < i:
                self._digits = list(kl_digits(self.max_digit, max(i, 2 * len(self._digits), 64)))
            return self._digits[i - 1]
        while len(self._digits) < i:
            outs = [next(g) for g in self._corners]
            ds = {d for d, _ in outs}
            if len(ds) != 1:
                raise Undecidable(f"quasi-greedy digit {len(self._digits) + 1} not determined at this precision")
            self._digits.append(ds.pop())
            if self._seen is not None:
                r = outs[0][1]
                n = len(self._digits)
                if r in self._seen:
                    start = self._seen[r]
                    self.ep = EventuallyPeriodicSeq(tuple(self._digits[:start]),
                                                    tuple(self._digits[start:n]), 0, self.max_digit)
                    return self.ep.digit(i)
                self._seen[r] = n
        return self._digits[i - 1]

    def prefix(self, n: int) -> Tuple[int, ...]:
        return tuple(self.digit(i) for i in range(1, n + 1))


def quasi_greedy_prefix(x, q, max_digit: int, length: int) -> Word:
    """First ``length`` digits of the quasi-greedy expansion of ``x`` in base ``q``."""
    x, q = PrecisionReal.coerce(x), PrecisionReal.coerce(q)
    if q.hi > max_digit + 1:
        raise ValueError("base must not exceed M + 1")
    if x.hi > Fraction(max_digit) / (q.lo - 1):
        raise ValueError("x exceeds M / (q - 1)")
    ref = QuasiGreedyReference(x, q, max_digit)
    return Word(ref.prefix(length), max_digit)


def ep_value(s: EventuallyPeriodicSeq, q) -> PrecisionReal:
    """Value ``sum_i s_i q^-i``, exact for rational ``q``."""
    q = PrecisionReal.coerce(q)
    if q.lo <= 1:
        raise ValueError("base must exceed 1")
    pre, per = s.preperiod, s.period
    if q.is_exact:
        x = 1 / q.center
        head = sum(Fraction(d) * x ** (i + 1) for i, d in enumerate(pre))
        cyc = sum(Fraction(d) * x ** (i + 1) for i, d in enumerate(per))
        return PrecisionReal.exact(head + x ** len(pre) * cyc / (1 - x ** len(per)))
    with mpmath.workdps(dps_for(max(q.radius, Fraction(1, 10**30)))):
        iv = mpmath.iv
        iv.dps = mpmath.mp.dps
        x = 1 / q.interval()
        head = sum((d * x ** (i + 1) for i, d in enumerate(pre)), iv.mpf(0))
        cyc = sum((d * x ** (i + 1) for i, d in enumerate(per)), iv.mpf(0))
        return ball_from_iv(head + x ** len(pre) * cyc / (1 - x ** len(per)))


def shift_alphabet(s: EventuallyPeriodicSeq, offset: int, low: Optional[int] = None,
                   high: Optional[int] = None) -> EventuallyPeriodicSeq:
    """Add ``offset`` to every digit; the value moves by ``offset / (q - 1)``."""
    low = s.low + offset if low is None else low
    high = s.high + offset if high is None else high
    return s.map_digits(lambda d: d + offset, low, high)


@dataclass(frozen=True)
class UniquenessVerdict:
    """``witness`` is ``(n, kind, comparison)`` for a failing shift: ``kind`` is
    ``"tail"`` when ``d_{n+1} d_{n+2} ...`` is not below the quasi-greedy reference,
    ``"reflected"`` when its reflection is not."""

    verdict: str
    witness: Optional[tuple] = None
    budget: int = 0
    note: str = ""

    @property
    def is_unique(self) -> bool:
        return self.verdict == UNIQUE


def _first_index(seq: EventuallyPeriodicSeq, avoid: int) -> Optional[int]:
    for i in range(1, len(seq.preperiod) + len(seq.period) + 1):
        if seq.digit(i) != avoid:
            return i
    return None


def _compare_with_reference(tail: EventuallyPeriodicSeq, ref: QuasiGreedyReference, budget: int) -> Optional[int]:
    """-1/0/1 comparison of ``tail`` against the reference, ``None`` when undecided."""
    if ref.ep is not None:
        return lex_compare_ep(tail, ref.ep)
    for i in range(1, budget + 1):
        a, b = tail.digit(i), ref.digit(i)
        if a != b:
            return -1 if a < b else 1
        if ref.ep is not None:
            return lex_compare_ep(tail, ref.ep)
    return None


def is_unique_expansion(s: EventuallyPeriodicSeq, q, m1: int, m2: int,
                        budget: Optional[int] = None) -> UniquenessVerdict:
    """Decide whether ``s`` over ``{-m2, ..., m1}`` is the unique expansion of its value.

    The sequence is shifted to ``{0, ..., M}`` with ``M = m1 + m2`` and each shifted
    tail (and its reflection) is compared with the quasi-greedy expansion of 1.
    """
    q = PrecisionReal.coerce(q)
    M = m1 + m2
    for d in s.preperiod + s.period:
        if not -m2 <= d <= m1:
            raise ValueError(f"digit {d} outside {{{-m2}..{m1}}}")
    if q.lo <= 1:
        raise ValueError("base must exceed 1")
    d = shift_alphabet(EventuallyPeriodicSeq(s.preperiod, s.period, -m2, m1), m2)
    pre, per = len(d.preperiod), len(d.period)
    if budget is None:
        budget = 10 * (pre + per) + 256
    if q.lo > M + 1:
        return UniquenessVerdict(UNIQUE, None, 0, "base exceeds M + 1: the cylinder sets are disjoint")
    try:
        ref = QuasiGreedyReference(1, q, M)
    except ValueError as exc:
        raise ValueError(str(exc)) from None
    checks = []
    f_top = _first_index(d, M)
    if f_top is not None:
        checks += [(n, "tail") for n in range(f_top, max(f_top, pre) + per + 1)]
    f_bot = _first_index(d, 0)
    if f_bot is not None:
        checks += [(n, "reflected") for n in range(f_bot, max(f_bot, pre) + per + 1)]
    undecided = None
    for n, kind in checks:
        tail = d.tail(n)
        if kind == "reflected":
            tail = tail.reflect()
        try:
            cmp = _compare_with_reference(tail, ref, budget)
        except Undecidable as exc:
            undecided = undecided or (n, kind, str(exc))
            continue
        if cmp is None:
            undecided = undecided or (n, kind, "agrees with the reference beyond the budget")
        elif cmp >= 0:
            return UniquenessVerdict(NOT_UNIQUE, (n, kind, "equal" if cmp == 0 else "greater"), budget)
    if undecided is not None:
        return UniquenessVerdict(UNDECIDED, undecided, budget)
    return UniquenessVerdict(UNIQUE, None, budget)
