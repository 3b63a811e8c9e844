"""
Closed-form power sums of the binomial f(x) = x^r (x^(q-1) + a).

Three evaluations of S(N) = sum over x of f(x)^N are provided and must agree:

* direct: literal summation over the field (log tables, bincount);
* triple: for e = 3, expansion along N = alpha + beta q + gamma q^2 with the
  (i, j, k) congruence modulo q^2 + q + 1;
* single: expansion of (x^(q-1) + a)^N with the n1 progression of step
  (q^e - 1)/(q - 1).

A nonzero S(N) for 1 <= N <= q^e - 2 certifies that f is not a permutation.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple
import logging

from ..algebra.binomial import BinomialSpec, eval_f, value_logs
from ..algebra.ext_field import FieldCtx, FieldElem
from ..algebra.prime_field import binom_mod_p, check_int_range, split_prime_power
from ..config import CERT_DIRECT_CAP, DIRECT_SUM_CAP
from ..errors import InputError, RangeCapError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExponentDecomp:
    """N = alpha + beta q + gamma q^2 in base q."""

    N: int
    alpha: int
    beta: int
    gamma: int

    @property
    def digit_sum(self) -> int:
        return self.alpha + self.beta + self.gamma


@dataclass(frozen=True)
class CongruenceSolution:
    i: int
    j: int
    k: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.i, self.j, self.k)


@dataclass
class PowerSumCert:
    """Evaluations of S(N) by each available method.

    ``value`` is the single-index evaluation, available for every e. A zero value is
    inconclusive; it never certifies a permutation.
    """

    N: int
    value_single: FieldElem
    value_triple: Optional[FieldElem] = None
    value_direct: Optional[FieldElem] = None
    decomposition: Optional[ExponentDecomp] = None
    solutions: List[CongruenceSolution] = field(default_factory=list)
    n1_values: List[int] = field(default_factory=list)
    recipe: Optional[str] = None

    @property
    def value(self) -> FieldElem:
        return self.value_single

    @property
    def nonzero(self) -> bool:
        return not self.value_single.is_zero()

    @property
    def agree(self) -> bool:
        others = [v for v in (self.value_triple, self.value_direct) if v is not None]
        return all(v == self.value_single for v in others)

    def to_record(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {"N": self.N}
        if self.decomposition is not None:
            record.update(
                alpha=self.decomposition.alpha,
                beta=self.decomposition.beta,
                gamma=self.decomposition.gamma,
            )
        record["solutions"] = [list(s.as_tuple()) for s in self.solutions]
        record["n1"] = self.n1_values
        record["value"] = str(self.value_single)
        record["status"] = "certified" if self.nonzero else "inconclusive"
        record["methods"] = {
            "single": True,
            "triple": None if self.value_triple is None else self.value_triple == self.value_single,
            "direct": None if self.value_direct is None else self.value_direct == self.value_single,
        }
        if self.recipe:
            record["recipe"] = self.recipe
        return record


def decompose_exponent(N: int, q: int) -> ExponentDecomp:
    """Base-q digits of 1 <= N <= q^3 - 2."""
    if not 1 <= N <= q**3 - 2:
        raise InputError(f"N={N} outside [1, {q**3 - 2}]")
    alpha, rest = N % q, N // q
    beta, gamma = rest % q, rest // q
    return ExponentDecomp(N, alpha, beta, gamma)


def _check_exponent(spec: BinomialSpec, N: int) -> None:
    check_int_range(N, "N")
    if N < 1:
        raise InputError("power-sum exponent must be positive")


def power_sum_direct(spec: BinomialSpec, N: int) -> FieldElem:
    """Literal sum of f(x)^N over F_{q^e}."""
    _check_exponent(spec, N)
    if spec.order > DIRECT_SUM_CAP:
        raise RangeCapError(f"direct power sum limited to orders up to 2^26, got {spec.order}")
    ctx = spec.ctx
    if ctx.has_logs:
        return ctx.power_sum_from_logs(value_logs(spec), N)
    total = ctx.zero
    for code in range(1, ctx.order):
        total = ctx.add(total, ctx.pow(eval_f(spec, ctx.from_int(code)), N))
    return total


def congruence_bounds(q: int, r: int, alpha: int, beta: int) -> Tuple[int, int]:
    """Extremes m, M of r(2 + alpha + beta + q beta) + q i - (q+1) j + k over the box
    0 <= i <= alpha, 0 <= j <= beta, 0 <= k <= 2(q-1) - alpha - beta.

    Reference span for checking solution counts: when M - m < q^2 + q + 1 at most
    one multiple of the modulus lies in [m, M]. solve_congruence_triple enumerates
    its box exactly and does not consult this.
    """
    base = r * (2 + alpha + beta + q * beta)
    gamma = 2 * (q - 1) - alpha - beta
    return base - (q + 1) * beta, base + q * alpha + gamma


def _shift(q: int, r: int, N: int) -> Optional[int]:
    """r N / (q - 1), or None when q - 1 does not divide r N."""
    product = r * N
    if product % (q - 1):
        return None
    return product // (q - 1)


def solve_congruence_triple(q: int, r: int, alpha: int, beta: int, gamma: int) -> List[CongruenceSolution]:
    """All (i, j, k) in the box [0, alpha] x [0, beta] x [0, gamma] with
    r N / (q-1) + i + q j - (q+1) k = 0 mod q^2 + q + 1, where N = alpha + beta q + gamma q^2.

    Empty when q - 1 does not divide r (alpha + beta + gamma).
    """
    for digit in (alpha, beta, gamma):
        if not 0 <= digit <= q - 1:
            raise InputError(f"digits must lie in [0, {q - 1}]")
    N = alpha + beta * q + gamma * q * q
    shift = _shift(q, r, N)
    if shift is None:
        return []
    modulus = q * q + q + 1
    shift %= modulus
    solutions = []
    for j in range(beta + 1):
        for k in range(gamma + 1):
            i = -(shift + q * j - (q + 1) * k) % modulus
            if i <= alpha:
                solutions.append(CongruenceSolution(i, j, k))
    return solutions


def _a_power(ctx: FieldCtx, spec: BinomialSpec, exponent: int) -> FieldElem:
    return ctx.pow(spec.a, exponent % (ctx.order - 1))


def power_sum_triple(spec: BinomialSpec, N: int) -> FieldElem:
    """S(N) from the three-digit expansion; e must be 3."""
    value, _ = _triple_with_solutions(spec, N)
    return value


def _triple_with_solutions(spec: BinomialSpec, N: int) -> Tuple[FieldElem, List[CongruenceSolution]]:
    if spec.e != 3:
        raise InputError(f"triple expansion needs e = 3, got e = {spec.e}")
    _check_exponent(spec, N)
    q, p, ctx = spec.q, spec.p, spec.ctx
    decomp = decompose_exponent(N, q)
    solutions = solve_congruence_triple(q, spec.r, decomp.alpha, decomp.beta, decomp.gamma)
    total = ctx.zero
    for s in solutions:
        coefficient = (
            binom_mod_p(decomp.alpha, s.i, p)
            * binom_mod_p(decomp.beta, s.j, p)
            * binom_mod_p(decomp.gamma, s.k, p)
        ) % p
        if coefficient:
            term = _a_power(ctx, spec, N - s.i - q * s.j - q * q * s.k)
            total = ctx.add(total, ctx.scale(term, coefficient))
    return ctx.neg(total), solutions


def single_index_solutions(q: int, e: int, r: int, N: int) -> List[int]:
    """All n1 in [0, N] with r N + (q - 1) n1 = 0 mod q^e - 1, ascending."""
    shift = _shift(q, r, N)
    if shift is None:
        return []
    step = (q**e - 1) // (q - 1)
    first = -shift % step
    return list(range(first, N + 1, step))


def power_sum_single(spec: BinomialSpec, N: int) -> FieldElem:
    """S(N) = -sum of C(N, n1) a^(N - n1) over the n1 progression; any e."""
    value, _ = _single_with_indices(spec, N)
    return value


def _single_with_indices(spec: BinomialSpec, N: int) -> Tuple[FieldElem, List[int]]:
    _check_exponent(spec, N)
    ctx, p = spec.ctx, spec.p
    indices = single_index_solutions(spec.q, spec.e, spec.r, N)
    total = ctx.zero
    for n1 in indices:
        coefficient = binom_mod_p(N, n1, p)
        if coefficient:
            total = ctx.add(total, ctx.scale(_a_power(ctx, spec, N - n1), coefficient))
    return ctx.neg(total), indices


def certify(spec: BinomialSpec, N: int, recipe: Optional[str] = None) -> PowerSumCert:
    """Evaluate S(N) by every method the field size permits and cross-check."""
    single, indices = _single_with_indices(spec, N)
    cert = PowerSumCert(N=N, value_single=single, n1_values=indices, recipe=recipe)
    if spec.e == 3 and N <= spec.q**3 - 2:
        cert.value_triple, cert.solutions = _triple_with_solutions(spec, N)
        cert.decomposition = decompose_exponent(N, spec.q)
    if spec.order <= CERT_DIRECT_CAP:
        cert.value_direct = power_sum_direct(spec, N)
    if not cert.agree:
        logger.error(f"power-sum methods disagree for {spec.to_record()} at N={N}: {cert.to_record()}")
    return cert


def recipe_exponents(q: int) -> List[Tuple[str, int]]:
    """Candidate witness exponents for e = 3, in the order they are tried."""
    recipes = [("alpha-gamma", (q - 1) + (q - 1) * q * q)]
    if q % 2:
        half = (q - 1) // 2
        recipes.append(("half-alpha-beta", half + half * q + (q - 1) * q * q))
    for name, k in (("k=q^2+q-1", q * q + q - 1), ("k=q^2-q+1", q * q - q + 1), ("k=q^2-1", q * q - 1)):
        recipes.append((name, k * (q - 1)))
    return [(name, N) for name, N in recipes if 1 <= N <= q**3 - 2]


def designated_exponent(q: int, r0: int) -> Tuple[str, int]:
    """Witness exponent k (q - 1) for r = r0 q + 1 with r0 even."""
    if r0 % split_prime_power(q)[0] == 0:
        k, name = q * q - 1, "k=q^2-1"
    elif r0 <= (q - 1) // 2:
        k, name = q * q + q - 1, "k=q^2+q-1"
    else:
        k, name = q * q - q + 1, "k=q^2-q+1"
    return name, k * (q - 1)


def witness_exponent(spec: BinomialSpec) -> Optional[Tuple[int, PowerSumCert]]:
    """First recipe exponent with a nonzero certified power sum, or None."""
    if spec.e != 3:
        raise InputError(f"witness recipes need e = 3, got e = {spec.e}")
    for name, N in recipe_exponents(spec.q):
        cert = certify(spec, N, recipe=name)
        if cert.nonzero:
            logger.debug(f"witness N={N} ({name}) for r={spec.r}")
            return N, cert
    logger.debug(f"no recipe witness for r={spec.r}, a_exp={spec.a_log}")
    return None
