"""Thue--Morse type mirror sequences and the signed sequences derived from them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from .words import Word

DEFAULT_BUDGET = 2**26


class BudgetExceeded(MemoryError):
    pass


@dataclass(frozen=True)
class MirrorSeed:
    seed: Word

    def __post_init__(self):
        if len(self.seed) < 1:
            raise ValueError("seed must be nonempty")
        if self.seed.max_digit < 1:
            raise ValueError("max_digit must be at least 1")

    @classmethod
    def parse(cls, text: str, max_digit: int) -> "MirrorSeed":
        return cls(Word.parse(text, max_digit))

    @property
    def max_digit(self) -> int:
        return self.seed.max_digit

    def __len__(self) -> int:
        return len(self.seed)


THUE_MORSE = MirrorSeed(Word((0,), 1))


def mirror_prefix(seed: MirrorSeed, length: int, budget: int = DEFAULT_BUDGET) -> Word:
    """``tau_0 ... tau_{length-1}`` obtained by repeated doubling ``w -> w + reflect(w)``."""
    if length < 1:
        raise ValueError("length must be positive")
    if length > budget:
        raise BudgetExceeded(f"prefix of length {length} exceeds budget {budget}")
    return Word(_doubled(seed.seed.digits, seed.max_digit, length), seed.max_digit)


@lru_cache(maxsize=64)
def _doubled(seed: Tuple[int, ...], max_digit: int, length: int) -> Tuple[int, ...]:
    w = seed
    while len(w) < length:
        w = w + tuple(max_digit - d for d in w)
    return w[:length]


def thue_morse(length: int) -> Tuple[int, ...]:
    """``tau_0 ... tau_{length-1}`` of the classical Thue--Morse sequence."""
    return _doubled((0,), 1, length)


def lambda_prefix(mu: int, length: int) -> Tuple[int, ...]:
    """``lambda_1 ... lambda_length`` with ``lambda_i = mu + tau_i - tau_{i-1}``."""
    if length < 1:
        raise ValueError("length must be positive")
    tau = thue_morse(length + 1)
    return tuple(mu + tau[i] - tau[i - 1] for i in range(1, length + 1))


def kl_signed_prefix(m1: int, m2: int, length: int) -> Tuple[int, ...]:
    """First ``length`` digits of the unique expansion of the Komornik--Loreti point
    over the signed alphabet ``{-m2, ..., m1}``."""
    if not m1 >= m2 >= 1:
        raise ValueError("need m1 >= m2 >= 1")
    if length < 1:
        raise ValueError("length must be positive")
    if (m1 + m2) % 2:
        tau = thue_morse(length + 1)
        base = (m1 - m2 - 1) // 2
        return tuple(base + tau[j] for j in range(1, length + 1))
    return lambda_prefix((m1 - m2) // 2, length)


def kl_digits(max_digit: int, length: int) -> Tuple[int, ...]:
    """First ``length`` digits ``p_1 p_2 ...`` of the unique expansion of 1 in the
    Komornik--Loreti base of ``{0, ..., M}``."""
    m = (max_digit + 1) // 2
    tau = thue_morse(length + 1)
    if max_digit % 2:
        return tuple(m - 1 + tau[i] for i in range(1, length + 1))
    return tuple(m + tau[i] - tau[i - 1] for i in range(1, length + 1))
