"""Exact block densities in mirror sequences.

For a mirror sequence generated from a seed of length ``l`` the density of a block
``delta`` equals ``(P - N) / (6 * 4**n * l)``, where ``N`` and ``P`` count ``delta``
and its reflection in the prefixes of length ``4**n * l`` and ``4**(n+1) * l``, for
any ``n`` with ``4**n * l >= len(delta) - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .mirror import DEFAULT_BUDGET, MirrorSeed, mirror_prefix
from .words import Word, count_occurrences, reflect


@dataclass(frozen=True)
class DensityResult:
    value: Fraction
    n_used: int
    N_count: int
    P_count: int
    seed_length: int

    def __post_init__(self):
        expected = Fraction(self.P_count - self.N_count, 6 * 4**self.n_used * self.seed_length)
        if expected != self.value:
            raise ValueError("inconsistent density record")
        if not 0 <= self.value <= 1:
            raise ValueError("density out of range")


def minimal_level(block_length: int, seed_length: int) -> int:
    n = 0
    while 4**n * seed_length < block_length - 1:
        n += 1
    return n


def _two_sided_count(delta: Word, prefix: Word) -> int:
    if len(delta) > len(prefix):
        return 0
    return count_occurrences(delta, prefix) + count_occurrences(reflect(delta), prefix)


def block_density(delta: Word, seed: MirrorSeed, n: Optional[int] = None,
                  budget: int = DEFAULT_BUDGET) -> DensityResult:
    """Density of ``delta`` in the mirror sequence of ``seed``.

    ``n`` defaults to the smallest admissible level; any larger level gives the
    same value.
    """
    if len(delta) < 1:
        raise ValueError("block must be nonempty")
    if delta.max_digit != seed.max_digit:
        delta = Word(delta.digits, seed.max_digit)
    ell = len(seed)
    n_min = minimal_level(len(delta), ell)
    if n is None:
        n = n_min
    elif n < n_min:
        raise ValueError(f"level {n} too small for a block of length {len(delta)}; need >= {n_min}")
    long_prefix = mirror_prefix(seed, 4 ** (n + 1) * ell, budget)
    short_prefix = long_prefix[: 4**n * ell]
    N = _two_sided_count(delta, short_prefix)
    P = _two_sided_count(delta, long_prefix)
    return DensityResult(Fraction(P - N, 6 * 4**n * ell), n, N, P, ell)


def empirical_block_density(delta: Word, seed: MirrorSeed, length: int,
                            budget: int = DEFAULT_BUDGET) -> Fraction:
    """``count(delta, tau_0 ... tau_{length-1}) / length``."""
    if length < len(delta):
        raise ValueError("prefix shorter than the block")
    prefix = mirror_prefix(seed, length, budget)
    return Fraction(count_occurrences(Word(delta.digits, seed.max_digit), prefix), length)


def difference_digit_density(j: int, seed: MirrorSeed) -> Fraction:
    """Density of the digit ``j`` in ``(tau_i - tau_{i-1})``, via the 2-blocks of ``tau``."""
    M = seed.max_digit
    total = Fraction(0)
    for a in range(M + 1):
        b = a + j
        if 0 <= b <= M:
            total += block_density(Word((a, b), M), seed).value
    return total


def symbol_fractions(s: Sequence[int], mu: int) -> Tuple[Fraction, Fraction, Fraction]:
    """Fractions of the digits ``mu - 1``, ``mu`` and ``mu + 1`` in ``s``."""
    if not s:
        raise ValueError("empty word")
    counts = [0, 0, 0]
    for d in s:
        k = d - mu + 1
        if not 0 <= k <= 2:
            raise ValueError(f"digit {d} outside {{{mu - 1}, {mu}, {mu + 1}}}")
        counts[k] += 1
    n = len(s)
    return Fraction(counts[0], n), Fraction(counts[1], n), Fraction(counts[2], n)
