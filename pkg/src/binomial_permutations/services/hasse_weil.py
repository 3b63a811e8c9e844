"""
Hasse-Weil non-permutation predictor and point counting of the curve
F(X, Y) = (f(X) - f(Y)) / (X - Y).

All threshold arithmetic is exact: comparisons against q^(e/2) and q^(e/4) are
certified by squaring or raising to the fourth power.
"""

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Any, Dict, List, Optional, Sequence
import logging

import numpy as np

from ..algebra.binomial import BinomialSpec, eval_f, value_logs
from ..algebra.ext_field import FieldElem
from ..algebra.prime_field import split_prime_power
from ..config import CURVE_COUNT_CAP, MAX_INT_BITS, PAIRWISE_CAP, SUBGROUP_CAP
from ..errors import InputError, RangeCapError
from ..utils.worker_pool import map_cells
from .perm_criteria import mu_d_is_pp

logger = logging.getLogger(__name__)


@dataclass
class HWReport:
    q: int
    e: int
    r: int
    d: int
    applicable: bool
    gcd_branch: str
    bound_lower: int
    exceeds_q: bool
    predicts_nonpp: bool
    lambda_check: bool
    radicand_ok: bool
    confirmed: Optional[bool] = None
    a_exps: List[int] = field(default_factory=list)

    @property
    def contradicted(self) -> bool:
        """A prediction refuted by the oracle."""
        return self.predicts_nonpp and self.confirmed is False

    def to_record(self) -> Dict[str, Any]:
        record = {
            "q": self.q,
            "e": self.e,
            "r": self.r,
            "d": self.d,
            "applicable": self.applicable,
            "gcd_branch": self.gcd_branch,
            "bound_lower": str(self.bound_lower),
            "exceeds_q": self.exceeds_q,
            "predicts_nonpp": self.predicts_nonpp,
            "lambda_check": self.lambda_check,
            "radicand_ok": self.radicand_ok,
        }
        if self.confirmed is not None:
            record["confirmed"] = self.confirmed
            record["a_exps"] = self.a_exps
        return record


def _ceil_sqrt(n: int) -> int:
    root = isqrt(n)
    return root if root * root == n else root + 1


def hw_threshold(q: int, e: int, r: int) -> HWReport:
    """Exact evaluation of the Hasse-Weil sufficient condition for non-permutation.

    The lower bound on affine zeros of F is
    q^e - (d-1)(d-2) q^(e/2) - d(d-1)^2/2 - d - 2 with d = r + q - 2; for odd e the
    stored value is its floor. The binomial is predicted not to permute when
    gcd(r, q-1) > 1, or when 1 < r < q^(e/4) - q + 3, q >= 6 and the bound exceeds q.

    Raises:
        InputError: q is not a prime power, or e, r < 1.
        RangeCapError: intermediate values exceed 128 bits.
    """
    split_prime_power(q)
    if e < 1 or r < 1:
        raise InputError(f"e and r must be positive, got e={e}, r={r}")
    order = q**e
    d = r + q - 2
    if order.bit_length() > MAX_INT_BITS or (d**4).bit_length() > MAX_INT_BITS:
        raise RangeCapError(f"q^e or d^4 exceeds {MAX_INT_BITS} bits for q={q}, e={e}, r={r}")

    B = (d - 1) * (d - 2)
    C = d * (d - 1) ** 2 // 2 + d + 2
    A = order - C
    if e % 2 == 0:
        bound = A - B * q ** (e // 2)
    else:
        bound = A - _ceil_sqrt(B * B * order)

    # A - q > B sqrt(Q), by squaring both sides
    slack = A - q
    exceeds = slack > 0 and (B == 0 or slack * slack > B * B * order)

    shifted = r + q - 3
    applicable = q >= 6 and r > 1 and (shifted < 0 or shifted**4 < order)

    t = (d - 1) ** 2
    C_q = C + q
    lambda_check = 2 * t >= B and t * t - B * t - C_q >= 0 and t * t < order
    radicand_ok = B * B + 4 * C_q <= (d * d - d) ** 2

    common = gcd(r, q - 1)
    gcd_branch = "gcd" if common > 1 else "hasse_weil"
    predicts = common > 1 or (applicable and exceeds)
    if applicable and not radicand_ok:
        logger.warning(f"radicand inequality fails for d={d}, q={q}")
    return HWReport(q, e, r, d, applicable, gcd_branch, bound, exceeds, predicts, lambda_check, radicand_ok)


def quotient_sum(ctx, X: FieldElem, Y: FieldElem, n: int) -> FieldElem:
    """sum of X^i Y^(n-1-i) for i < n, by S_1 = 1, S_(k+1) = X S_k + Y^k."""
    total = ctx.one
    y_power = ctx.one
    for _ in range(1, n):
        y_power = ctx.mul(y_power, Y)
        total = ctx.add(ctx.mul(X, total), y_power)
    return total


def eval_F(spec: BinomialSpec, X: FieldElem, Y: FieldElem) -> FieldElem:
    """F(X, Y) = (f(X) - f(Y)) / (X - Y) as a polynomial: the quotient sums of
    X^(r+q-1) and a X^r. On the diagonal F(X, X) = (r+q-1) X^(r+q-2) + a r X^(r-1)."""
    ctx = spec.ctx
    top = spec.r + spec.q - 1
    if X != Y:
        return ctx.add(quotient_sum(ctx, X, Y, top), ctx.mul(spec.a, quotient_sum(ctx, X, Y, spec.r)))
    lead = ctx.scale(ctx.pow(X, top - 1), top)
    tail = ctx.scale(ctx.mul(spec.a, ctx.pow(X, spec.r - 1)), spec.r)
    return ctx.add(lead, tail)


@dataclass(frozen=True)
class CurveCount:
    zero_count: int
    diagonal_count: int
    offdiag_count: int

    def to_record(self) -> Dict[str, int]:
        return {
            "zero_count": self.zero_count,
            "diagonal_count": self.diagonal_count,
            "offdiag_count": self.offdiag_count,
        }


def _diagonal_zeros(spec: BinomialSpec) -> int:
    ctx = spec.ctx
    return sum(1 for code in range(ctx.order) if eval_F(spec, ctx.from_int(code), ctx.from_int(code)).is_zero())


def count_curve_points(spec: BinomialSpec) -> CurveCount:
    """Affine zeros of F over F_{q^e}: off-diagonal zeros from the multiset of f-values,
    sum of c_v (c_v - 1), plus the diagonal zeros."""
    ctx = spec.ctx
    if ctx.order > CURVE_COUNT_CAP:
        raise RangeCapError(f"curve point count limited to orders up to 2^12, got {ctx.order}")
    if ctx.has_logs:
        codes = np.concatenate(([0], ctx.codes_of_logs(value_logs(spec))))
        counts = np.bincount(codes, minlength=ctx.order).astype(np.int64)
    else:
        counts = np.zeros(ctx.order, dtype=np.int64)
        for code in range(ctx.order):
            counts[ctx.to_int(eval_f(spec, ctx.from_int(code)))] += 1
    offdiag = int((counts * (counts - 1)).sum())
    diagonal = _diagonal_zeros(spec)
    if diagonal > spec.q:
        logger.error(f"diagonal of F has {diagonal} zeros, more than q={spec.q}")
    return CurveCount(offdiag + diagonal, diagonal, offdiag)


def count_curve_points_pairwise(spec: BinomialSpec) -> CurveCount:
    """Quadratic scan of every (X, Y) pair."""
    ctx = spec.ctx
    if ctx.order > PAIRWISE_CAP:
        raise RangeCapError(f"pairwise point count limited to orders up to 2^8, got {ctx.order}")
    elements = [ctx.from_int(code) for code in range(ctx.order)]
    diagonal = offdiag = 0
    for X in elements:
        for Y in elements:
            if eval_F(spec, X, Y).is_zero():
                if X == Y:
                    diagonal += 1
                else:
                    offdiag += 1
    return CurveCount(diagonal + offdiag, diagonal, offdiag)


def _confirm_cell(cell) -> bool:
    """Oracle verdict is not-PP for one (p, m, e, r, a_exp)."""
    p, m, e, r, a_exp = cell
    return not mu_d_is_pp(BinomialSpec.from_exponent(p, m, e, r, a_exp)).is_pp


def theorem2_scan(
    q: int,
    e: int,
    r_list: Sequence[int],
    a_exps: Sequence[int],
    confirm: bool = True,
    jobs: Optional[int] = None,
) -> List[HWReport]:
    """Threshold reports for each r, confirmed by the subgroup criterion on every sampled a.

    ``confirmed`` is True when every sampled a gives a non-permutation. Confirmation is
    skipped when mu_d is too large to enumerate.
    """
    p, m = split_prime_power(q)
    reports = [hw_threshold(q, e, r) for r in sorted(set(r_list))]
    d = (q**e - 1) // (q - 1)
    if not confirm or not a_exps or d > SUBGROUP_CAP:
        return reports
    cells = [(p, m, e, report.r, a) for report in reports for a in a_exps]
    logger.info(f"confirming {len(reports)} exponents over F_{q}^{e} with {len(a_exps)} values of a")
    verdicts = map_cells(_confirm_cell, cells, jobs)
    per_r = len(a_exps)
    for index, report in enumerate(reports):
        report.confirmed = all(verdicts[index * per_r:(index + 1) * per_r])
        report.a_exps = list(a_exps)
        if report.contradicted:
            logger.error(f"prediction for r={report.r} refuted over F_{q}^{e}")
    return reports
