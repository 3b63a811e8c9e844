import math
import random

import pytest

from binomial_permutations.algebra.prime_field import (
    binom_mod_p,
    check_int_range,
    lucas_binom,
    p_digits,
    require_prime,
    small_binom,
    split_prime_power,
)
from binomial_permutations.errors import DigitOverflowError, InputError, RangeCapError


def test_p_digits_least_significant_first():
    assert p_digits(7, 2).digits == (1, 1, 1)
    assert p_digits(640, 3).digits == (1, 0, 2, 2, 1, 2)
    assert p_digits(0, 5).digits == (0,)


def test_p_digits_padding_and_value():
    expansion = p_digits(7, 2, width=5)
    assert expansion.digits == (1, 1, 1, 0, 0)
    assert expansion.value() == 7


def test_p_digits_overflow():
    with pytest.raises(DigitOverflowError, match="digit overflow"):
        p_digits(8, 2, width=3)


def test_p_digits_rejects_negative_and_huge():
    with pytest.raises(InputError):
        p_digits(-1, 3)
    with pytest.raises(RangeCapError):
        check_int_range(2**128)
    check_int_range(2**128 - 1)


@pytest.mark.parametrize(
    "p, draws",
    [
        (2, 10_000),
        (3, 10_000),
        (5, 10_000),
        pytest.param(7, 10_000, marks=pytest.mark.slow),
        pytest.param(13, 20, marks=pytest.mark.slow),
    ],
)
def test_lucas_matches_exact_binomial(p, draws):
    rng = random.Random(p)
    bound = p**6
    for _ in range(draws):
        n = rng.randrange(bound)
        k = rng.randrange(bound)
        expected = math.comb(n, k) % p
        assert int(lucas_binom(n, k, p)) == expected
        assert binom_mod_p(n, k, p) == expected


@pytest.mark.parametrize("p, m", [(2, 1), (2, 3), (3, 2), (5, 1), (7, 1), (13, 1)])
def test_lucas_never_vanishes_below_q_minus_one(p, m):
    q = p**m
    # every base-p digit of q - 1 is p - 1
    for k in range(q):
        assert int(lucas_binom(q - 1, k, p)) != 0


def test_lucas_zero_cases():
    assert not lucas_binom(3, 5, 7)
    # 423 has a base-3 digit above the matching digit of 640
    assert int(lucas_binom(640, 423, 3)) == 0
    assert int(lucas_binom(640, 514, 3)) != 0


def test_small_binom_single_digit():
    assert int(small_binom(6, 3, 7)) == 20 % 7
    assert int(small_binom(4, 5, 7)) == 0
    with pytest.raises(InputError):
        small_binom(7, 1, 7)


def test_require_prime():
    assert require_prime(13) == 13
    for bad in (0, 1, 4, 9):
        with pytest.raises(InputError):
            require_prime(bad)


@pytest.mark.parametrize("q, expected", [(7, (7, 1)), (8, (2, 3)), (9, (3, 2)), (169, (13, 2))])
def test_split_prime_power(q, expected):
    assert split_prime_power(q) == expected


@pytest.mark.parametrize("q", [1, 6, 12, 36])
def test_split_prime_power_rejects(q):
    with pytest.raises(InputError):
        split_prime_power(q)
