from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrradius.multiindex import corner_index, count_multi_indices, enumerate_indices, monomial_eval


@pytest.mark.parametrize("m,n,expected", [(2, 2, 3), (0, 7, 1), (3, 3, 10), (5, 4, 56), (1, 9, 9)])
def test_count_examples(m, n, expected):
    assert count_multi_indices(m, n) == expected


def test_count_is_exact_for_huge_values():
    value = count_multi_indices(60, 40)
    assert value == math.comb(99, 60)
    assert value > 10**18


def test_count_overflow_is_reported():
    with pytest.raises(OverflowError):
        count_multi_indices(60, 40, max_value=2**63 - 1)
    assert count_multi_indices(5, 4, max_value=56) == 56


@pytest.mark.parametrize("m,n", [(-1, 2), (2, 0), (1.5, 2)])
def test_count_rejects_bad_arguments(m, n):
    with pytest.raises(ValueError):
        count_multi_indices(m, n)


def test_enumerate_examples():
    assert enumerate_indices(1, 2) == [(1, 0), (0, 1)]
    assert enumerate_indices(2, 2) == [(2, 0), (1, 1), (0, 2)]
    idx = enumerate_indices(3, 3)
    assert len(idx) == 10 == len(set(idx)) == count_multi_indices(3, 3)


def test_enumeration_matches_count_and_order():
    for m in range(1, 9):
        for n in range(1, 9):
            idx = enumerate_indices(m, n)
            assert len(idx) == count_multi_indices(m, n)
            assert all(sum(a) == m and len(a) == n for a in idx)
            assert idx == sorted(idx, reverse=True)
            assert len(set(idx)) == len(idx)


def test_pascal_identity():
    for n in range(2, 12):
        for m in range(1, 12):
            assert count_multi_indices(m, n) == count_multi_indices(m, n - 1) + count_multi_indices(m - 1, n)


def test_enumeration_is_deterministic():
    assert enumerate_indices(4, 3) == enumerate_indices(4, 3)


def test_corner_index():
    assert corner_index(3, 3, 1) == (0, 3, 0)
    with pytest.raises(IndexError):
        corner_index(2, 2, 2)


def test_monomial_examples():
    assert monomial_eval((0, 0, 0), (1.5, -2j, 3)) == 1
    assert monomial_eval((2, 1), (1j, 2)) == pytest.approx(-2)
    z = np.exp(1j * np.array([0.3, 1.1, -2.0]))
    assert abs(monomial_eval((1, 1, 1), z)) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        monomial_eval((1, 2), (1.0,))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=5), st.integers(0, 2**32 - 1))
def test_monomial_modulus(alpha, seed):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(len(alpha)) + 1j * rng.standard_normal(len(alpha))
    expected = math.prod(abs(zi) ** a for zi, a in zip(z, alpha))
    assert abs(monomial_eval(alpha, z)) == pytest.approx(expected, rel=1e-12)
