import random
from math import gcd

import pytest

from binomial_permutations.algebra.binomial import BinomialSpec
from binomial_permutations.algebra.prime_field import binom_mod_p
from binomial_permutations.errors import InputError, RangeCapError
from binomial_permutations.services.closed_form import (
    certify,
    congruence_bounds,
    decompose_exponent,
    designated_exponent,
    power_sum_direct,
    power_sum_single,
    power_sum_triple,
    recipe_exponents,
    single_index_solutions,
    solve_congruence_triple,
    witness_exponent,
)
from binomial_permutations.services.perm_criteria import brute_force_is_pp
from binomial_permutations.services.theorems import FieldParams, sample_a_exponents


@pytest.mark.parametrize(
    "N, q, digits",
    [(1, 9, (1, 0, 0)), (20, 9, (2, 2, 0)), (20, 3, (2, 0, 2)), (6 + 6 * 49, 7, (6, 0, 6))],
)
def test_decompose_exponent(N, q, digits):
    decomp = decompose_exponent(N, q)
    assert (decomp.alpha, decomp.beta, decomp.gamma) == digits
    assert decomp.alpha + decomp.beta * q + decomp.gamma * q * q == N


@pytest.mark.parametrize("N", [0, 26])
def test_decompose_exponent_range(N):
    with pytest.raises(InputError):
        decompose_exponent(N, 3)


def test_congruence_for_full_period_exponent():
    assert [s.as_tuple() for s in solve_congruence_triple(3, 13, 2, 0, 2)] == [(0, 0, 0)]


def test_congruence_digit_range():
    with pytest.raises(InputError):
        solve_congruence_triple(3, 1, 3, 0, 0)


def test_congruence_empty_without_divisibility():
    # 7 * 3 is odd, so q - 1 = 2 does not divide r N
    assert solve_congruence_triple(3, 7, 1, 1, 1) == []


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_alpha_gamma_has_at_most_one_solution(q):
    D = q * q + q + 1
    for r in range(1, D + 1):
        assert len(solve_congruence_triple(q, r, q - 1, 0, q - 1)) <= 1


@pytest.mark.parametrize("r0, expected", [(2, (4, 0, 0)), (4, (4, 1, 1)), (8, (4, 3, 3))])
def test_half_alpha_beta_solution_present(r0, expected):
    q = 9
    solutions = [s.as_tuple() for s in solve_congruence_triple(q, r0 * q + 1, 4, 4, 8)]
    assert expected in solutions


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11])
def test_congruence_bounds_span(q):
    low, high = congruence_bounds(q, 5, q - 1, 0)
    assert high - low == q * q - 1


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_congruence_span_below_modulus_allows_one_solution(q):
    modulus = q * q + q + 1
    for r in range(1, 3 * q):
        low, high = congruence_bounds(q, r, q - 1, 0)
        assert high - low < modulus
        multiples = sum(1 for value in range(low, high + 1) if value % modulus == 0)
        assert multiples <= 1
        assert len(solve_congruence_triple(q, r, q - 1, 0, q - 1)) <= 1


def _random_spec(rng, p, m, e=3):
    params = FieldParams(p, m, e)
    r = rng.randrange(1, params.d + 1)
    a_exp = rng.randrange(params.order - 1)
    return BinomialSpec.from_exponent(p, m, e, r, a_exp)


@pytest.mark.parametrize("p, m", [(3, 2), (7, 1), (2, 3), (2, 2)])
def test_power_sum_methods_agree(p, m):
    rng = random.Random(p * 100 + m)
    q = p**m
    for _ in range(200):
        spec = _random_spec(rng, p, m)
        if rng.random() < 0.5:
            N = rng.randrange(1, spec.order - 1)
        else:
            N = (q - 1) * rng.randrange(1, (spec.order - 2) // (q - 1) + 1)
        direct = power_sum_direct(spec, N)
        assert power_sum_triple(spec, N) == direct, (spec.to_record(), N)
        assert power_sum_single(spec, N) == direct, (spec.to_record(), N)


def test_single_index_agrees_beyond_cubic_extensions():
    rng = random.Random(9)
    for _ in range(100):
        spec = _random_spec(rng, 3, 1, e=5)
        N = rng.randrange(1, spec.order - 1)
        assert power_sum_single(spec, N) == power_sum_direct(spec, N)
    with pytest.raises(InputError):
        power_sum_triple(spec, 1)


def test_full_period_sum_is_minus_one_for_single_root():
    spec = BinomialSpec.from_exponent(3, 1, 3, 13, 0)
    ctx = spec.ctx
    assert power_sum_direct(spec, ctx.order - 1) == ctx.neg(ctx.one)


def test_power_sum_for_r_equal_cube_degree():
    # q = 3, r = q^2 + q + 1: S(N) = -a^(q - q^2) at N = (q-1)(1 + q^2)
    spec = BinomialSpec.from_exponent(3, 1, 3, 13, 4)
    ctx = spec.ctx
    assert power_sum_triple(spec, 20) == ctx.neg(ctx.pow(spec.a, 3 - 9))


def test_direct_sum_cap():
    spec = BinomialSpec.from_exponent(2, 9, 3, 1, 1)
    with pytest.raises(RangeCapError):
        power_sum_direct(spec, 1)


def test_single_index_progression_small_field():
    # q = 7, r0 = 2: N = 1 + 5q + 6q^2 has one Lucas-surviving index
    N = 1 + 5 * 7 + 6 * 49
    indices = single_index_solutions(7, 3, 15, N)
    assert indices == [30, 87, 144, 201, 258, 315]
    assert [n1 for n1 in indices if binom_mod_p(N, n1, 7)] == [(2 * 2 - 1) * 7 + 6 * 49]


def test_single_index_progression_divisible_r0():
    # q = 9, r0 = 6 divisible by p: N = 1 + 8q + 7q^2
    N = 1 + 8 * 9 + 7 * 81
    indices = single_index_solutions(9, 3, 55, N)
    assert indices[0] == 59
    assert [n1 for n1 in indices if binom_mod_p(N, n1, 3)] == [514]
    spec = BinomialSpec.from_exponent(3, 2, 3, 55, 3)
    assert not power_sum_single(spec, N).is_zero()


def test_single_index_empty_without_divisibility():
    assert single_index_solutions(7, 3, 5, 7) == []


def test_recipe_exponents():
    assert recipe_exponents(7)[0] == ("alpha-gamma", 300)
    names = [name for name, _ in recipe_exponents(9)]
    assert names == ["alpha-gamma", "half-alpha-beta", "k=q^2+q-1", "k=q^2-q+1", "k=q^2-1"]
    assert "half-alpha-beta" not in [name for name, _ in recipe_exponents(8)]


@pytest.mark.parametrize(
    "q, r0, expected",
    [(13, 4, "k=q^2+q-1"), (13, 10, "k=q^2-q+1"), (9, 6, "k=q^2-1"), (7, 2, "k=q^2+q-1")],
)
def test_designated_exponent(q, r0, expected):
    name, N = designated_exponent(q, r0)
    assert name == expected
    assert N % (q - 1) == 0


def test_witness_for_r_two():
    spec = BinomialSpec.from_exponent(7, 1, 3, 2, 0)
    N, cert = witness_exponent(spec)
    assert N == 300
    assert cert.recipe == "alpha-gamma"
    assert cert.nonzero and cert.agree
    assert [s.as_tuple() for s in cert.solutions] == [(5, 0, 6)]


def test_no_witness_for_linearized_permutation():
    assert witness_exponent(BinomialSpec.from_exponent(7, 1, 3, 1, 1)) is None


def test_witness_needs_cubic_extension():
    with pytest.raises(InputError):
        witness_exponent(BinomialSpec.from_exponent(3, 1, 4, 2, 0))


def test_certificate_record():
    spec = BinomialSpec.from_exponent(3, 1, 3, 13, 0)
    record = certify(spec, 20).to_record()
    assert record["status"] == "certified"
    assert (record["alpha"], record["beta"], record["gamma"]) == (2, 0, 2)
    assert record["solutions"] == [[0, 0, 0]]
    assert record["value"] == "2,0,0"
    assert record["methods"] == {"single": True, "triple": True, "direct": True}


def test_zero_certificate_is_inconclusive():
    spec = BinomialSpec.from_exponent(7, 1, 3, 1, 1)
    assert certify(spec, 300).to_record()["status"] == "inconclusive"


def test_witness_implies_not_permutation():
    for r in range(1, 14):
        for a_exp in range(0, 26, 3):
            spec = BinomialSpec.from_exponent(3, 1, 3, r, a_exp)
            if witness_exponent(spec) is not None:
                assert not brute_force_is_pp(spec).is_pp


@pytest.mark.parametrize("p", [3, 5, 7])
def test_witness_exists_for_every_coprime_r(p):
    params = FieldParams(p, 1, 3)
    for a_exp in sample_a_exponents(params, 3):
        for r in range(2, params.d + 1):
            if gcd(r, p - 1) == 1:
                spec = BinomialSpec.from_exponent(p, 1, 3, r, a_exp)
                assert witness_exponent(spec) is not None, (r, a_exp)
