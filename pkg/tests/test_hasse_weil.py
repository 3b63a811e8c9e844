import random
from decimal import Decimal, getcontext

import pytest

from binomial_permutations.algebra.binomial import BinomialSpec, eval_f
from binomial_permutations.errors import InputError, RangeCapError
from binomial_permutations.services.hasse_weil import (
    count_curve_points,
    count_curve_points_pairwise,
    eval_F,
    hw_threshold,
    quotient_sum,
    theorem2_scan,
)
from binomial_permutations.services.perm_criteria import brute_force_is_pp
from binomial_permutations.services.theorems import FieldParams, sample_a_exponents

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 49, 64]


def test_threshold_example():
    report = hw_threshold(7, 8, 10)
    assert report.d == 15
    assert report.bound_lower == 5_326_332
    assert report.applicable and report.exceeds_q
    assert report.predicts_nonpp
    # gcd(10, 6) = 2 decides before the bound is consulted
    assert report.gcd_branch == "gcd"
    assert report.lambda_check and report.radicand_ok
    assert report.to_record()["bound_lower"] == "5326332"


def test_threshold_coprime_exponent():
    report = hw_threshold(7, 8, 11)
    d = 16
    B = (d - 1) * (d - 2)
    C = d * (d - 1) ** 2 // 2 + d + 2
    assert report.bound_lower == 7**8 - C - B * 7**4 == 5_258_773
    assert report.gcd_branch == "hasse_weil"
    assert report.applicable and report.exceeds_q
    assert report.predicts_nonpp


def test_applicability_edge():
    assert hw_threshold(7, 8, 44).applicable
    assert not hw_threshold(7, 8, 45).applicable


@pytest.mark.parametrize("r", range(2, 21))
def test_cubic_extension_never_applicable(r):
    assert not hw_threshold(7, 3, r).applicable


def test_small_q_not_applicable():
    assert not hw_threshold(5, 12, 3).applicable
    assert hw_threshold(5, 12, 2).predicts_nonpp
    assert hw_threshold(5, 12, 2).gcd_branch == "gcd"


def test_even_characteristic_prediction():
    report = hw_threshold(8, 8, 2)
    assert report.applicable
    assert report.bound_lower == 16_604_978
    assert report.predicts_nonpp


@pytest.mark.parametrize("q", [1, 6, 12])
def test_threshold_rejects_non_prime_powers(q):
    with pytest.raises(InputError):
        hw_threshold(q, 3, 5)


def test_threshold_bit_cap():
    with pytest.raises(RangeCapError):
        hw_threshold(2, 129, 3)


def _decimal_reference(q, e, r):
    d = r + q - 2
    B = (d - 1) * (d - 2)
    C = d * (d - 1) ** 2 // 2 + d + 2
    A = q**e - C
    root = Decimal(q**e).sqrt()
    return A, B, root


def test_threshold_matches_high_precision_arithmetic():
    getcontext().prec = 80
    rng = random.Random(17)
    for _ in range(1000):
        q = rng.choice(PRIME_POWERS)
        e = rng.randrange(1, 13)
        r = rng.randrange(1, 200)
        report = hw_threshold(q, e, r)
        A, B, root = _decimal_reference(q, e, r)
        exact = Decimal(A) - Decimal(B) * root
        assert report.bound_lower == int(exact.to_integral_value(rounding="ROUND_FLOOR"))
        assert report.exceeds_q == (Decimal(A - q) > Decimal(B) * root)


def test_bound_decreases_with_r():
    bounds = [hw_threshold(7, 8, r).bound_lower for r in range(2, 45)]
    assert bounds == sorted(bounds, reverse=True)


def test_quotient_sum_on_the_diagonal():
    spec = BinomialSpec.from_exponent(7, 1, 3, 4, 3)
    ctx = spec.ctx
    rng = random.Random(1)
    for _ in range(50):
        X = ctx.from_int(rng.randrange(1, ctx.order))
        for n in (1, 2, 5, 7, 10):
            assert quotient_sum(ctx, X, X, n) == ctx.scale(ctx.pow(X, n - 1), n)


def test_eval_f_is_the_difference_quotient():
    spec = BinomialSpec.from_exponent(7, 1, 3, 4, 3)
    ctx = spec.ctx
    rng = random.Random(2)
    for _ in range(100):
        X = ctx.from_int(rng.randrange(ctx.order))
        Y = ctx.from_int(rng.randrange(ctx.order))
        if X == Y:
            continue
        numerator = ctx.sub(eval_f(spec, X), eval_f(spec, Y))
        assert eval_F(spec, X, Y) == ctx.mul(numerator, ctx.inv(ctx.sub(X, Y)))


def test_eval_f_diagonal_matches_quotient_sums():
    spec = BinomialSpec.from_exponent(7, 1, 3, 4, 3)
    ctx = spec.ctx
    top = spec.r + spec.q - 1
    rng = random.Random(4)
    for _ in range(50):
        X = ctx.from_int(rng.randrange(ctx.order))
        expected = ctx.add(
            quotient_sum(ctx, X, X, top),
            ctx.mul(spec.a, quotient_sum(ctx, X, X, spec.r)),
        )
        assert eval_F(spec, X, X) == expected


def test_eval_F_symmetric():
    spec = BinomialSpec.from_exponent(5, 1, 3, 1, 2)
    ctx = spec.ctx
    rng = random.Random(3)
    for _ in range(50):
        X, Y = ctx.from_int(rng.randrange(ctx.order)), ctx.from_int(rng.randrange(ctx.order))
        assert eval_F(spec, X, Y) == eval_F(spec, Y, X)


def test_collision_is_a_curve_point():
    spec = BinomialSpec.from_exponent(7, 1, 3, 5, 0)
    witness = brute_force_is_pp(spec).witness
    assert eval_F(spec, witness.x1, witness.x2).is_zero()


@pytest.mark.parametrize("p, m", [(2, 2), (3, 1)])
def test_multiset_count_matches_pairwise(p, m):
    params = FieldParams(p, m, 3)
    for r in (1, 2, 3, 5, 7):
        for a_exp in (0, 1, 4):
            spec = BinomialSpec.from_exponent(p, m, 3, r, a_exp)
            assert count_curve_points(spec) == count_curve_points_pairwise(spec)
            assert count_curve_points(spec).diagonal_count <= params.q


def test_permutation_has_no_offdiagonal_points():
    spec = BinomialSpec.from_exponent(7, 1, 3, 1, 1)
    count = count_curve_points(spec)
    assert count.offdiag_count == 0
    assert count.zero_count == count.diagonal_count


def test_point_count_respects_bound():
    params = FieldParams(7, 1, 3)
    for r in (3, 5):
        report = hw_threshold(7, 3, r)
        for a_exp in sample_a_exponents(params, 5):
            count = count_curve_points(BinomialSpec.from_exponent(7, 1, 3, r, a_exp))
            if report.bound_lower > 0:
                assert count.zero_count >= report.bound_lower


def test_point_count_caps():
    with pytest.raises(RangeCapError):
        count_curve_points(BinomialSpec.from_exponent(2, 5, 3, 2, 0))
    with pytest.raises(RangeCapError):
        count_curve_points_pairwise(BinomialSpec.from_exponent(7, 1, 3, 2, 0))


def test_gcd_branch_is_confirmed():
    params = FieldParams(7, 1, 4)
    reports = theorem2_scan(7, 4, [2], sample_a_exponents(params, 2))
    assert reports[0].gcd_branch == "gcd"
    assert reports[0].predicts_nonpp
    assert reports[0].confirmed is True
    assert not reports[0].contradicted


def test_scan_without_confirmation():
    reports = theorem2_scan(7, 8, [10, 5, 10], [1], confirm=False)
    assert [report.r for report in reports] == [5, 10]
    assert all(report.confirmed is None for report in reports)
    assert "confirmed" not in reports[0].to_record()


@pytest.mark.slow
def test_theorem2_confirmed_over_degree_eight_extension():
    params = FieldParams(7, 1, 8)
    reports = theorem2_scan(7, 8, [5, 11, 25, 41], sample_a_exponents(params, 3))
    for report in reports:
        assert report.predicts_nonpp
        assert report.confirmed is True
