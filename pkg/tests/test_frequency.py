from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_count, naive_mirror, tm_bits
from tmcantor.frequency import (
    DensityResult, block_density, difference_digit_density, empirical_block_density,
    minimal_level, symbol_fractions,
)
from tmcantor.mirror import THUE_MORSE, MirrorSeed, lambda_prefix
from tmcantor.words import Word, reflect


def d(text, seed=THUE_MORSE, n=None):
    return block_density(Word.parse(text, seed.max_digit), seed, n).value


@pytest.mark.parametrize("block,value", [
    ("0", "1/2"), ("01", "1/3"), ("00", "1/6"), ("000", "0"),
    ("001", "1/6"), ("010", "1/6"), ("011", "1/6"), ("10", "1/3"),
])
def test_thue_morse_table(block, value):
    assert d(block) == Fraction(value)


def test_00101_against_direct_count():
    # 00101 occurs twice in every 24 letters on average (with 11010 at the same rate)
    tau = tm_bits(1 << 18)
    assert d("00101") == Fraction(1, 12)
    assert abs(Fraction(naive_count((0, 0, 1, 0, 1), tau), len(tau)) - Fraction(1, 12)) < Fraction(1, 10**4)


def test_counts_in_worked_table():
    r = block_density(Word.parse("01", 1), THUE_MORSE, 1)
    assert (r.N_count, r.P_count) == (2, 10)
    r = block_density(Word.parse("0", 1), THUE_MORSE, 0)
    assert (r.N_count, r.P_count) == (1, 4)


def test_level_choice():
    assert minimal_level(1, 1) == 0
    assert minimal_level(2, 1) == 0
    assert minimal_level(5, 1) == 1
    assert minimal_level(6, 1) == 2
    assert minimal_level(6, 3) == 1
    with pytest.raises(ValueError):
        block_density(Word.parse("00101", 1), THUE_MORSE, 0)


def test_density_record_validation():
    with pytest.raises(ValueError):
        DensityResult(Fraction(1, 2), 0, 1, 5, 1)


def test_empirical_examples():
    w = lambda t: Word.parse(t, 1)
    assert empirical_block_density(w("01"), THUE_MORSE, 16) == Fraction(5, 16)
    assert empirical_block_density(w("0"), THUE_MORSE, 4) == Fraction(1, 2)
    assert empirical_block_density(w("11"), THUE_MORSE, 16) == Fraction(3, 16)


def test_difference_digits():
    assert [difference_digit_density(j, THUE_MORSE) for j in (-1, 0, 1)] == [Fraction(1, 3)] * 3


def test_symbol_fraction_examples():
    assert symbol_fractions(lambda_prefix(0, 2), 0)[1] == Fraction(1, 2)
    assert symbol_fractions(lambda_prefix(0, 8), 0)[1] == Fraction(3, 8)
    assert symbol_fractions((1, 1, 1), 0) == (0, 0, 1)
    with pytest.raises(ValueError):
        symbol_fractions((2,), 0)


def test_lambda_symbol_fractions_converge():
    for f in symbol_fractions(lambda_prefix(0, 4**8), 0):
        assert abs(f - Fraction(1, 3)) < Fraction(1, 100)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_completeness(k):
    total = sum(d("".join(map(str, w))) for w in product((0, 1), repeat=k))
    assert total == 1


def test_completeness_other_seed():
    seed = MirrorSeed.parse("021", 2)
    total = sum(block_density(Word(w, 2), seed).value for w in product(range(3), repeat=3))
    assert total == 1


cases = st.integers(1, 3).flatmap(lambda M: st.tuples(
    st.just(M),
    st.lists(st.integers(0, M), min_size=1, max_size=3),
    st.lists(st.integers(0, M), min_size=1, max_size=6)))


@given(cases)
def test_level_stability_and_reflection(case):
    M, seed, delta = case
    s, w = MirrorSeed(Word(seed, M)), Word(delta, M)
    base = block_density(w, s)
    n = base.n_used
    assert block_density(w, s, n + 1).value == base.value
    assert block_density(w, s, n + 2).value == base.value
    assert block_density(reflect(w), s).value == base.value


@settings(max_examples=30)
@given(cases)
def test_convergence_to_empirical(case):
    M, seed, delta = case
    s, w = MirrorSeed(Word(seed, M)), Word(delta, M)
    L = 4**8 * len(s)
    gap = abs(empirical_block_density(w, s, L) - block_density(w, s).value)
    assert gap <= Fraction(2 * len(w), 4**4)


@settings(max_examples=30)
@given(cases)
def test_counts_against_naive_generator(case):
    M, seed, delta = case
    s, w = MirrorSeed(Word(seed, M)), Word(delta, M)
    r = block_density(w, s)
    ell, n = len(seed), r.n_used
    short = naive_mirror(seed, M, 4**n * ell)
    long = naive_mirror(seed, M, 4 ** (n + 1) * ell)
    bar = tuple(M - c for c in delta)
    two = lambda e: (naive_count(delta, e) + naive_count(bar, e)) if len(delta) <= len(e) else 0
    assert (r.N_count, r.P_count) == (two(short), two(long))
