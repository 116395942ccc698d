from fractions import Fraction
from math import isqrt, prod

import pytest
from hypothesis import given, strategies as st

from shgseries.fock import (
    MismatchedRadical,
    RadicalAmplitude,
    TwoModeFock,
    apply_ladder,
    falling_factorial,
    radical_mul,
    radical_squared,
)
from shgseries.processes import process_amplitude


@pytest.mark.parametrize(
    "x, length, expected",
    [
        (10, 4, 10 * 9 * 8 * 7),
        (5, 0, 1),
        (3, 4, 0),
        (4, 4, 24),
        (-2, 3, 0),
        (-2, 0, 1),
    ],
)
def test_falling_factorial(x, length, expected):
    assert falling_factorial(x, length) == expected


def test_falling_factorial_matches_direct_product():
    for x in range(0, 15):
        for length in range(0, 15):
            assert falling_factorial(x, length) == prod(range(x - length + 1, x + 1))


def test_falling_factorial_rejects_negative_length():
    with pytest.raises(ValueError):
        falling_factorial(3, -1)


@given(st.integers(-5, 20), st.integers(0, 10), st.integers(0, 10))
def test_falling_factorial_splits(x, a, b):
    assert falling_factorial(x, a + b) == falling_factorial(x, a) * falling_factorial(x - a, b)


def test_apply_ladder_examples():
    assert apply_ladder(TwoModeFock(4, 0), "pump", "annihilate", 2) == (12, TwoModeFock(2, 0))
    for n in range(6):
        assert apply_ladder(TwoModeFock(n, 0), "sh", "create", 1) == (1, TwoModeFock(n, 1))
    amp2, _ = apply_ladder(TwoModeFock(2, 0), "sh", "annihilate", 1)
    assert amp2 == 0


def test_apply_ladder_creation_is_rising_factorial():
    # (a^dag)^3 |2> = sqrt(3*4*5) |5>
    assert apply_ladder(TwoModeFock(2, 7), "pump", "create", 3) == (60, TwoModeFock(5, 7))


@given(st.integers(0, 12), st.integers(0, 12), st.sampled_from(["pump", "sh"]), st.integers(0, 6))
def test_create_then_annihilate_roundtrip(p, s, mode, k):
    start = TwoModeFock(p, s)
    up, mid = apply_ladder(start, mode, "create", k)
    down, end = apply_ladder(mid, mode, "annihilate", k)
    assert end == start
    assert up == down > 0


def test_negative_occupation_rejected():
    with pytest.raises(ValueError):
        TwoModeFock(-1, 0)


def test_reachable_from():
    assert TwoModeFock(6, 2).reachable_from(10)
    assert not TwoModeFock(6, 1).reachable_from(10)


def test_radical_mul_examples():
    f1 = process_amplitude((1,), 4)
    assert radical_mul(f1, f1) == 12
    zero = RadicalAmplitude(4, 1, Fraction(0))
    assert radical_mul(f1, zero) == 0
    f3 = process_amplitude((1, 1, 1), 2)
    g = process_amplitude((1,), 2)
    assert radical_mul(f3, g) == 4


def test_radical_mul_mismatch():
    with pytest.raises(MismatchedRadical):
        radical_mul(RadicalAmplitude(4, 1, Fraction(1)), RadicalAmplitude(4, 2, Fraction(1)))


def test_from_squared_requires_shared_radical():
    with pytest.raises(ValueError):
        RadicalAmplitude.from_squared(4, 1, 13)
    assert RadicalAmplitude.from_squared(4, 1, 48).cofactor == 2


@given(st.integers(0, 14), st.data())
def test_radical_mul_commutes_and_matches_root_of_squares(n, data):
    v = data.draw(st.integers(0, n // 2))
    a = RadicalAmplitude(n, v, Fraction(data.draw(st.integers(0, 50)), data.draw(st.integers(1, 9))))
    b = RadicalAmplitude(n, v, Fraction(data.draw(st.integers(0, 50)), data.draw(st.integers(1, 9))))
    prod_ab = radical_mul(a, b)
    assert prod_ab == radical_mul(b, a)
    sq = a.squared() * b.squared()
    root = Fraction(isqrt(sq.numerator), isqrt(sq.denominator))
    assert root * root == sq
    assert prod_ab == root


def test_radical_squared():
    assert radical_squared(10, 4) == 24 * (10 * 9 * 8 * 7 * 6 * 5 * 4 * 3)
    assert radical_squared(3, 2) == 0
    assert radical_squared(7, 0) == 1
