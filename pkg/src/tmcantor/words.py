"""Finite words over ``{0, ..., M}`` and eventually periodic digit sequences."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple

Digits = Tuple[int, ...]


def parse_digits(text: str) -> Digits:
    """Parse ``"0110"`` (one character per digit) or ``"1,-1,0"`` (comma separated)."""
    text = text.strip()
    if not text:
        return ()
    if "," in text or text.startswith("-"):
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    return tuple(int(ch) for ch in text)


def format_digits(digits: Sequence[int]) -> str:
    return ",".join(str(d) for d in digits)


@dataclass(frozen=True)
class Word:
    """An immutable word whose alphabet ceiling travels with it."""

    digits: Digits
    max_digit: int

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if self.max_digit < 0:
            raise ValueError("max_digit must be nonnegative")
        for d in self.digits:
            if not 0 <= d <= self.max_digit:
                raise ValueError(f"digit {d} outside {{0..{self.max_digit}}}")

    @classmethod
    def parse(cls, text: str, max_digit: int) -> "Word":
        return cls(parse_digits(text), max_digit)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.digits[item], self.max_digit)
        return self.digits[item]

    def __add__(self, other: "Word") -> "Word":
        if other.max_digit != self.max_digit:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.digits + other.digits, self.max_digit)

    def __str__(self) -> str:
        if self.max_digit <= 9:
            return "".join(map(str, self.digits))
        return format_digits(self.digits)


def reflect(w: Word) -> Word:
    return Word(tuple(w.max_digit - d for d in w.digits), w.max_digit)


def bump(w: Word, direction: int) -> Word:
    """Change the last digit by ``+1`` or ``-1`` (the ``w^+`` / ``w^-`` operation)."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if not w.digits:
        raise ValueError("cannot bump the empty word")
    last = w.digits[-1] + direction
    if not 0 <= last <= w.max_digit:
        raise ValueError(f"bumped digit {last} leaves {{0..{w.max_digit}}}")
    return Word(w.digits[:-1] + (last,), w.max_digit)


def _as_digits(w) -> Digits:
    return w.digits if isinstance(w, Word) else tuple(w)


def count_occurrences(delta, epsilon) -> int:
    """Number of (possibly overlapping) occurrences of ``delta`` in ``epsilon``."""
    d, e = _as_digits(delta), _as_digits(epsilon)
    if not d:
        raise ValueError("delta must be nonempty")
    if len(d) > len(e):
        raise ValueError("delta longer than epsilon")
    if min(d + e) >= 0 and max(d + e) < 256:
        hay, needle = bytes(e), bytes(d)
        count, pos = 0, hay.find(needle)
        while pos != -1:
            count += 1
            pos = hay.find(needle, pos + 1)
        return count
    k = len(d)
    return sum(1 for p in range(len(e) - k + 1) if e[p:p + k] == d)


def count_boundary(delta, epsilon, zeta) -> int:
    """Occurrences of ``delta`` in ``epsilon + zeta`` that start in ``epsilon`` and end in ``zeta``.

    A one-letter ``delta`` cannot straddle the junction, so the count is 0.
    """
    d, e, z = _as_digits(delta), _as_digits(epsilon), _as_digits(zeta)
    if not d:
        raise ValueError("delta must be nonempty")
    k = len(d)
    joined = e + z
    first = max(0, len(e) - k + 1)
    last = min(len(e) - 1, len(joined) - k)
    return sum(1 for p in range(first, last + 1) if joined[p:p + k] == d)


def lex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """Compare two finite words position by position up to the shorter length."""
    for x, y in zip(a, b):
        if x != y:
            return -1 if x < y else 1
    return 0


def _minimal_period(period: Digits) -> Digits:
    p = len(period)
    for d in range(1, p + 1):
        if p % d == 0 and period[:d] * (p // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True)
class EventuallyPeriodicSeq:
    """The infinite sequence ``preperiod + period + period + ...`` over ``{low, ..., high}``.

    Instances are always stored in canonical form (shortest period, then shortest
    preperiod), so ``==`` is equality of the infinite sequences.
    """

    preperiod: Digits
    period: Digits
    low: int
    high: int

    def __post_init__(self):
        pre = tuple(int(d) for d in self.preperiod)
        per = tuple(int(d) for d in self.period)
        if not per:
            raise ValueError("period must be nonempty")
        if self.low > self.high:
            raise ValueError("empty alphabet")
        for d in pre + per:
            if not self.low <= d <= self.high:
                raise ValueError(f"digit {d} outside {{{self.low}..{self.high}}}")
        per = _minimal_period(per)
        while pre and pre[-1] == per[-1]:
            per = (pre[-1],) + per[:-1]
            pre = pre[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def periodic(cls, period: Iterable[int], low: int, high: int) -> "EventuallyPeriodicSeq":
        return cls((), tuple(period), low, high)

    @classmethod
    def parse(cls, text: str, low: int, high: int) -> "EventuallyPeriodicSeq":
        """Parse ``"pre|period"`` or a bare period, digits comma separated."""
        if "|" in text:
            pre, per = text.split("|", 1)
        else:
            pre, per = "", text
        return cls(parse_digits(pre), parse_digits(per), low, high)

    def digit(self, i: int) -> int:
        """The ``i``-th digit, 1-based."""
        if i < 1:
            raise IndexError("digits are indexed from 1")
        if i <= len(self.preperiod):
            return self.preperiod[i - 1]
        return self.period[(i - len(self.preperiod) - 1) % len(self.period)]

    def prefix(self, n: int) -> Digits:
        return tuple(self.digit(i) for i in range(1, n + 1))

    def __iter__(self) -> Iterator[int]:
        yield from self.preperiod
        while True:
            yield from self.period

    def tail(self, n: int) -> "EventuallyPeriodicSeq":
        """The shifted sequence ``d_{n+1} d_{n+2} ...``."""
        pre = self.preperiod
        if n <= len(pre):
            return EventuallyPeriodicSeq(pre[n:], self.period, self.low, self.high)
        k = (n - len(pre)) % len(self.period)
        return EventuallyPeriodicSeq((), self.period[k:] + self.period[:k], self.low, self.high)

    def map_digits(self, f, low: int, high: int) -> "EventuallyPeriodicSeq":
        return EventuallyPeriodicSeq(tuple(map(f, self.preperiod)), tuple(map(f, self.period)), low, high)

    def reflect(self) -> "EventuallyPeriodicSeq":
        """Digitwise ``c -> low + high - c``."""
        s = self.low + self.high
        return self.map_digits(lambda c: s - c, self.low, self.high)

    def __str__(self) -> str:
        per = f"({format_digits(self.period)})^inf"
        return f"{format_digits(self.preperiod)}|{per}" if self.preperiod else per


def lex_compare_ep(a: EventuallyPeriodicSeq, b: EventuallyPeriodicSeq) -> int:
    """Exact lexicographic comparison, returning -1, 0 or 1."""
    if (a.low, a.high) != (b.low, b.high):
        raise ValueError("sequences over different alphabets")
    if a == b:
        return 0
    horizon = max(len(a.preperiod), len(b.preperiod)) + math.lcm(len(a.period), len(b.period))
    for i in range(1, horizon + 1):
        x, y = a.digit(i), b.digit(i)
        if x != y:
            return -1 if x < y else 1
    return 0  # unreachable for canonical forms
