import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slcg.generator import (
    EnumerationCapError,
    EvenBitWidthError,
    alpha_bound,
    alpha_max,
    alpha_max_recursive,
    check_bits,
    check_state,
    closed_form_state,
    cycle_matrix,
    cycle_states,
    enumerate_cycle,
    enumerate_generators,
    is_generator,
    is_generator_array,
    iterate,
    modulus,
    step,
    step_array,
    walk_states,
)


def orbit_minima(n):
    """Cycle minima of x -> (2x + 1) mod (2^n + 1) on [0, 2^n - 1], by plain orbit walking."""
    m = (1 << n) + 1
    seen = set()
    minima = {}
    for x in range(1 << n):
        if x in seen:
            continue
        orbit = [x]
        y = (2 * x + 1) % m
        while y != x:
            orbit.append(y)
            y = (2 * y + 1) % m
        seen.update(orbit)
        minima[min(orbit)] = len(orbit)
    return minima


def test_table_one_generators():
    assert enumerate_generators(7) == [0, 2, 4, 6, 8, 10, 12, 18, 20, 42]


def test_table_one_rows():
    assert enumerate_cycle(2, 7).states == (2, 5, 11, 23, 47, 95, 62, 125, 122, 116, 104, 80, 32, 65)
    assert enumerate_cycle(42, 7).states == (42, 85)
    assert enumerate_cycle(42, 7).period == 2


@pytest.mark.parametrize("n", range(3, 15))
def test_generators_match_orbit_oracle(n):
    minima = orbit_minima(n)
    assert enumerate_generators(n) == sorted(minima)
    assert [a for a in range(1 << n) if is_generator(a, n)] == sorted(minima)


@pytest.mark.parametrize("n", range(3, 15))
def test_periods_divide_2n(n):
    for a, period in orbit_minima(n).items():
        assert (2 * n) % period == 0
        assert enumerate_cycle(a, n).period == period


def test_n5_generators_and_short_cycle():
    # the period-2 cycle {10, 21} has its minimum above alpha_max(5) = 4
    assert enumerate_generators(5) == [0, 2, 4, 10]
    assert enumerate_generators(5, full_period_only=True) == [0, 2, 4]
    assert alpha_max(5) == 4


def test_partition_n9():
    covered = sorted(s for a in enumerate_generators(9) for s in enumerate_cycle(a, 9).states)
    assert covered == list(range(512))


@pytest.mark.parametrize("n", range(3, 13))
def test_step_matches_modular_definition(n):
    m = modulus(n)
    for x in range(1 << n):
        assert step(x, n) == (2 * x + 1) % m


@pytest.mark.parametrize("n", [3, 5, 8, 12])
def test_closed_form_matches_iteration(n):
    for x in range(1 << n):
        y = x
        for k in range(2 * n + 1):
            assert closed_form_state(k, x, n) == y
            y = step(y, n)


def test_n_steps_give_complement():
    n = 11
    for x in (0, 1, 5, 700, 2047):
        assert iterate(x, n, n) == (1 << n) - 1 - x
        assert iterate(x, n, 2 * n) == x


def test_step_fixed_examples():
    assert step(0, 7) == 1
    assert step(127, 7) == 126
    assert step(64, 7) == 0


def test_step_rejects_out_of_range():
    with pytest.raises(ValueError):
        check_state(8, 3)
    with pytest.raises(ValueError):
        check_state(-1, 5)
    with pytest.raises(ValueError):
        enumerate_cycle(8, 3)


def test_bits_below_three_rejected():
    with pytest.raises(ValueError):
        check_bits(2)
    with pytest.raises(TypeError):
        check_bits(7.0)


def test_alpha_max_table_three_values():
    assert [alpha_max(n) for n in (3, 5, 7, 9, 11)] == [0, 4, 20, 84, 340]
    assert alpha_max(31) == 357913940
    assert alpha_max(53) == 1501199875790164


@pytest.mark.parametrize("n", range(3, 60, 2))
def test_alpha_max_recursion(n):
    assert alpha_max(n) == alpha_max_recursive(n)


@pytest.mark.parametrize("n", range(3, 20, 2))
def test_alpha_max_is_largest_full_period_generator(n):
    full = [a for a, p in orbit_minima(n).items() if p == 2 * n] if n <= 13 else enumerate_generators(
        n, full_period_only=True
    )
    assert max(full) == alpha_max(n)


def test_even_n_guard():
    with pytest.raises(EvenBitWidthError):
        alpha_bound(8)
    bound, closed = alpha_bound(8, allow_even=True)
    assert bound % 2 == 0 and not closed
    assert bound >= max(a for a, p in orbit_minima(8).items() if p == 16)


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError):
        enumerate_generators(40)
    with pytest.raises(EnumerationCapError):
        enumerate_generators(41, limit=5)
    assert enumerate_generators(21, limit=5) == [0, 2, 4, 6, 8]


def test_generator_limit():
    assert enumerate_generators(7, limit=3) == [0, 2, 4]


def test_odd_states_are_never_generators():
    for n in (5, 7, 9):
        assert not any(is_generator(a, n) for a in range(1, 1 << n, 2))


# -- fixed-width fast path ------------------------------------------------------


@pytest.mark.parametrize("n", [3, 7, 21, 33, 63])
def test_step_array_matches_scalar(n):
    rng = random.Random(n)
    xs = [rng.getrandbits(n) for _ in range(500)] + [0, (1 << n) - 1]
    got = step_array(np.array(xs, dtype=np.uint64), n)
    assert [int(v) for v in got] == [step(x, n) for x in xs]


@pytest.mark.parametrize("n", [5, 9, 13])
def test_is_generator_array_matches_scalar(n):
    a = np.arange(0, 1 << n, dtype=np.uint64)
    assert list(np.flatnonzero(is_generator_array(a, n))) == enumerate_generators(n)


def test_cycle_matrix_rows():
    M = cycle_matrix([0, 2, 42], 7)
    assert M.shape == (3, 14)
    assert [int(v) for v in M[2]] == [42, 85] * 7


@given(st.integers(min_value=3, max_value=63).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
@settings(max_examples=300, deadline=None)
def test_closed_form_states_equal_big_int_walk(case):
    n, x = case
    assert [int(v) for v in cycle_states(x, n)] == walk_states(x, n)


@given(st.integers(min_value=3, max_value=200).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
@settings(max_examples=200, deadline=None)
def test_walk_is_complement_antiperiodic(case):
    n, x = case
    w = walk_states(x, n)
    mask = (1 << n) - 1
    assert all(w[k + n] == w[k] ^ mask for k in range(n))
    assert step(w[-1], n) == x


@given(st.integers(min_value=3, max_value=120).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
@settings(max_examples=200, deadline=None)
def test_generator_test_agrees_with_cycle_minimum(case):
    n, x = case
    assert is_generator(x, n) == (min(walk_states(x, n)) == x)
