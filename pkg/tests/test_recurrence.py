"""Recurrence engine versus formulas and the brute-force oracle."""
from fractions import Fraction

import pytest

from rabot import (
    InvalidBaseError,
    MomentQuery,
    brute_moment,
    build_table,
    extend,
    moment_value,
    seed_base_case,
)


def test_seed_binary_first_moment():
    t = seed_base_case(2, 1)
    assert moment_value(t, 1, 1) == 1
    assert moment_value(t, 1, 1, last_digit=0) == 0
    assert moment_value(t, 1, 1, last_digit=1) == 1


def test_seed_base_three_second_moment():
    # two-digit base-3 numbers with nonzero r are 11 and 22: 1 + 4
    t = seed_base_case(3, 2)
    assert moment_value(t, 2, 1) == 5


def test_seed_counting_layer():
    for b in range(2, 8):
        t = seed_base_case(b, 3)
        assert moment_value(t, 0, 1) == (b - 1) * b
        for l in range(b):
            assert moment_value(t, 0, 1, last_digit=l) == b - 1


def test_seed_first_moment_is_triangular():
    for b in range(2, 11):
        t = seed_base_case(b, 1)
        assert moment_value(t, 1, 1) == b * (b - 1) // 2


def test_binary_first_moment_sequence():
    t = build_table(2, 1, 20)
    assert [moment_value(t, 1, k) for k in range(1, 6)] == [1, 4, 14, 46, 146]
    for k in range(1, 21):
        assert moment_value(t, 1, k) == 2 * 3 ** (k - 1) - 2 ** (k - 1)


def test_binary_second_moment_small():
    t = build_table(2, 2, 2)
    assert moment_value(t, 2, 2) == 10


def test_counting_layer_all_k():
    for b in (2, 3, 7):
        t = build_table(b, 0, 12)
        for k in range(1, 13):
            assert moment_value(t, 0, k) == (b - 1) * b**k
            for l in range(b):
                assert moment_value(t, 0, k, last_digit=l) == (b - 1) * b ** (k - 1)


def test_base_three_first_moment_recurrence():
    t = build_table(3, 1, 15)
    for k in range(2, 16):
        assert (
            moment_value(t, 1, k)
            == 5 * moment_value(t, 1, k - 1) + 2 * 3 ** (k - 1)
        )


def test_first_moment_recurrence_all_bases():
    for b in range(2, 11):
        t = build_table(b, 1, 20)
        for k in range(2, 21):
            gain = b ** (k - 1) * (b - 1) ** 2 // 2
            assert moment_value(t, 1, k) == (2 * b - 1) * moment_value(t, 1, k - 1) + gain


def test_first_moment_closed_form_all_bases():
    for b in range(2, 11):
        t = build_table(b, 1, 20)
        for k in range(1, 21):
            expected = Fraction(b * (b - 1), 2 * b - 1) * (2 * b - 1) ** k - Fraction(
                b - 1, 2
            ) * b**k
            assert moment_value(t, 1, k) == expected


def test_matches_oracle():
    for b in range(2, 5):
        t = build_table(b, 3, 5)
        for p in range(4):
            for k in range(1, 6):
                for last in [None, *range(b)]:
                    assert moment_value(t, p, k, last) == brute_moment(
                        MomentQuery(b, p, k, last)
                    ), (b, p, k, last)


def test_last_digit_decomposition_invariant():
    for b in (2, 3, 6):
        t = build_table(b, 3, 8)
        for q in range(4):
            for k in range(1, 9):
                assert (
                    sum(moment_value(t, q, k, l) for l in range(b))
                    == moment_value(t, q, k)
                )


def test_moments_strictly_grow():
    t = build_table(4, 3, 10)
    for q in range(1, 4):
        for k in range(1, 10):
            assert moment_value(t, q, k + 1) > moment_value(t, q, k)


def test_lookup_examples_and_errors():
    t = build_table(2, 2, 3)
    assert moment_value(t, 1, 3) == 14
    assert moment_value(t, 0, 2) == 4
    with pytest.raises(IndexError):
        moment_value(t, 3, 1)
    with pytest.raises(IndexError):
        moment_value(t, 1, 4)
    with pytest.raises(IndexError):
        moment_value(t, 1, 0)
    with pytest.raises(IndexError):
        moment_value(t, 1, 2, last_digit=2)


def test_extend_is_incremental_and_pure():
    t1 = build_table(3, 2, 4)
    t2 = extend(t1, 9)
    assert t1.max_k == 4
    assert t2.max_k == 9
    fresh = build_table(3, 2, 9)
    assert t2.total == fresh.total
    assert t2.by_last == fresh.by_last
    with pytest.raises(ValueError):
        extend(t2, 3)


def test_seed_validation():
    with pytest.raises(InvalidBaseError):
        seed_base_case(1, 2)
    with pytest.raises(ValueError):
        seed_base_case(2, -1)
