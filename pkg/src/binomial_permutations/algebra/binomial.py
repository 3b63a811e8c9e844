"""
The binomial f(x) = x^r (x^(q-1) + a) over F_{q^e}, q = p^m.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence
import logging

import numpy as np

from ..errors import InputError
from .ext_field import FieldCtx, FieldElem, get_field
from .prime_field import require_prime

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BinomialSpec:
    """Parameters of one binomial; ``a_exp`` caches the omega-exponent of a when known."""

    p: int
    m: int
    e: int
    r: int
    a: FieldElem
    a_exp: Optional[int] = None

    def __post_init__(self):
        require_prime(self.p)
        if self.m < 1 or self.e < 1:
            raise InputError(f"m and e must be positive, got m={self.m}, e={self.e}")
        if self.r < 1:
            raise InputError(f"r must be positive, got {self.r}")
        if len(self.a.coeffs) != self.m * self.e:
            raise InputError(f"a needs {self.m * self.e} coefficients, got {len(self.a.coeffs)}")
        if self.a.is_zero():
            raise InputError("a must be nonzero")

    @classmethod
    def from_exponent(cls, p: int, m: int, e: int, r: int, a_exp: int) -> "BinomialSpec":
        ctx = get_field(p, m * e)
        a_exp %= ctx.order - 1
        return cls(p, m, e, r, ctx.elem_exp(a_exp), a_exp)

    @classmethod
    def from_coeffs(cls, p: int, m: int, e: int, r: int, coeffs: Sequence[int]) -> "BinomialSpec":
        ctx = get_field(p, m * e)
        return cls(p, m, e, r, ctx.element(coeffs))

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def n(self) -> int:
        return self.m * self.e

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def d(self) -> int:
        """Size of mu_d, (q^e - 1)/(q - 1)."""
        return (self.order - 1) // (self.q - 1)

    @property
    def ctx(self) -> FieldCtx:
        return get_field(self.p, self.n)

    @property
    def a_log(self) -> int:
        if self.a_exp is not None:
            return self.a_exp
        return self.ctx.elem_log(self.a)

    def with_r(self, r: int) -> "BinomialSpec":
        return BinomialSpec(self.p, self.m, self.e, r, self.a, self.a_exp)

    def to_record(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "m": self.m,
            "e": self.e,
            "r": self.r,
            "a_exp": self.a_log,
            "a": str(self.a),
        }


def eval_f(spec: BinomialSpec, x: FieldElem) -> FieldElem:
    """x^r (x^(q-1) + a); zero at x = 0."""
    ctx = spec.ctx
    if x.is_zero():
        return ctx.zero
    return ctx.mul(ctx.pow(x, spec.r), ctx.add(ctx.pow(x, spec.q - 1), spec.a))


def value_logs(spec: BinomialSpec) -> np.ndarray:
    """omega-exponents of f(omega^k) for k = 0 .. q^e - 2, with -1 for zero values."""
    ctx = spec.ctx
    ctx.require_logs()
    group = ctx.order - 1
    k = np.arange(group, dtype=np.int64)
    shifted = ctx.add_logs(k * (spec.q - 1) % group, spec.a_log)
    return np.where(shifted < 0, -1, (k * (spec.r % group) + shifted) % group)


def has_nonzero_root(spec: BinomialSpec) -> bool:
    """Whether x^(q-1) = -a is solvable, i.e. (-a)^d = 1."""
    ctx = spec.ctx
    minus_a = (spec.a_log + ctx.minus_one_log) % (ctx.order - 1)
    return minus_a % (spec.q - 1) == 0


def root_count(spec: BinomialSpec) -> int:
    """Number of roots of f in F_{q^e}: 1, or q when x^(q-1) = -a is solvable."""
    return 1 + (spec.q - 1) * int(has_nonzero_root(spec))


def find_nonzero_root(spec: BinomialSpec) -> Optional[FieldElem]:
    """The root omega^(log(-a)/(q-1)), if any."""
    if not has_nonzero_root(spec):
        return None
    ctx = spec.ctx
    minus_a = (spec.a_log + ctx.minus_one_log) % (ctx.order - 1)
    return ctx.elem_exp(minus_a // (spec.q - 1))


def is_valid_a_exponent(ctx: FieldCtx, q: int, a_exp: int) -> bool:
    """a = omega^a_exp gives f a single root."""
    return (a_exp + ctx.minus_one_log) % (ctx.order - 1) % (q - 1) != 0
