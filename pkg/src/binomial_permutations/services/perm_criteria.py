"""
Permutation tests for f(x) = x^r (x^(q-1) + a).

Four independent deciders are provided: exhaustive image marking, Hermite's
criterion through power sums, the mu_d subgroup criterion, and a closed-form
decider built on the certificates of ``closed_form``. Witnesses are canonical:
elements are enumerated as 0, omega^0, omega^1, ... and the first collision in
that order is reported.
"""

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Union
import logging

import numpy as np

from ..algebra.binomial import BinomialSpec, eval_f, find_nonzero_root, root_count, value_logs
from ..algebra.ext_field import FieldCtx, FieldElem
from ..config import BRUTE_FORCE_CAP, HERMITE_CAP, SUBGROUP_CAP
from ..errors import RangeCapError
from .closed_form import power_sum_single, witness_exponent

logger = logging.getLogger(__name__)

__all__ = [
    "Method",
    "CollisionWitness",
    "HermiteWitness",
    "GcdWitness",
    "SubgroupCollisionWitness",
    "PermVerdict",
    "eval_f",
    "root_count",
    "brute_force_is_pp",
    "hermite_is_pp",
    "hermite_is_pp_poly",
    "mu_d_is_pp",
    "closed_form_is_pp",
]


class Method(str, Enum):
    BRUTE = "brute"
    HERMITE = "hermite"
    MU_D = "mu_d"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class CollisionWitness:
    """Two distinct elements with the same image."""

    x1: FieldElem
    x2: FieldElem
    value: FieldElem
    kind: str = "collision"

    def to_record(self) -> Dict[str, Any]:
        return {"kind": self.kind, "x1": str(self.x1), "x2": str(self.x2), "value": str(self.value)}


@dataclass(frozen=True)
class HermiteWitness:
    """An exponent N with a nonzero power sum."""

    N: int
    value: FieldElem
    recipe: Optional[str] = None
    kind: str = "hermite"

    def to_record(self) -> Dict[str, Any]:
        record = {"kind": self.kind, "N": self.N, "value": str(self.value)}
        if self.recipe:
            record["recipe"] = self.recipe
        return record


@dataclass(frozen=True)
class GcdWitness:
    r: int
    gcd: int
    kind: str = "gcd"

    def to_record(self) -> Dict[str, Any]:
        return {"kind": self.kind, "r": self.r, "gcd": self.gcd}


@dataclass(frozen=True)
class SubgroupCollisionWitness:
    """Two distinct elements of mu_d with the same image under z^r (z + a)^(q-1)."""

    z1: FieldElem
    z2: FieldElem
    value: FieldElem
    kind: str = "mu_collision"

    def to_record(self) -> Dict[str, Any]:
        return {"kind": self.kind, "z1": str(self.z1), "z2": str(self.z2), "value": str(self.value)}


Witness = Union[CollisionWitness, HermiteWitness, GcdWitness, SubgroupCollisionWitness]


@dataclass(frozen=True)
class PermVerdict:
    is_pp: bool
    method: Method
    witness: Optional[Witness] = None

    def __post_init__(self):
        if not self.is_pp and self.witness is None:
            raise ValueError("a negative verdict needs a witness")

    def to_record(self) -> Dict[str, Any]:
        return {
            "is_pp": self.is_pp,
            "method": self.method.value,
            "witness": self.witness.to_record() if self.witness else None,
        }


def _element_at(ctx: FieldCtx, index: int) -> FieldElem:
    """Enumeration order: index 0 is zero, index t is omega^(t-1)."""
    return ctx.zero if index == 0 else ctx.elem_exp(index - 1)


def _first_collision(codes: np.ndarray) -> Optional[tuple]:
    """(i, j) with i < j, codes[i] == codes[j] and j minimal; None when injective."""
    _, first_index, inverse = np.unique(codes, return_index=True, return_inverse=True)
    if len(first_index) == len(codes):
        return None
    earlier = first_index[inverse.reshape(-1)]
    repeats = np.nonzero(earlier < np.arange(len(codes)))[0]
    j = int(repeats[0])
    return int(earlier[j]), j


def _root_collision(spec: BinomialSpec) -> CollisionWitness:
    ctx = spec.ctx
    return CollisionWitness(ctx.zero, find_nonzero_root(spec), ctx.zero)


def brute_force_is_pp(spec: BinomialSpec) -> PermVerdict:
    """Evaluate f on every element and look for a repeated image."""
    ctx = spec.ctx
    if ctx.order > BRUTE_FORCE_CAP:
        raise RangeCapError(f"brute force limited to orders up to 2^26, got {ctx.order}")
    if ctx.has_logs:
        codes = np.concatenate(([0], ctx.codes_of_logs(value_logs(spec))))
        hit = _first_collision(codes)
        if hit is None:
            return PermVerdict(True, Method.BRUTE)
        i, j = hit
        x1, x2 = _element_at(ctx, i), _element_at(ctx, j)
        return PermVerdict(False, Method.BRUTE, CollisionWitness(x1, x2, ctx.from_int(int(codes[j]))))

    seen: Dict[int, int] = {}
    for index in range(ctx.order):
        x = _element_at(ctx, index)
        code = ctx.to_int(eval_f(spec, x))
        if code in seen:
            witness = CollisionWitness(_element_at(ctx, seen[code]), x, ctx.from_int(code))
            return PermVerdict(False, Method.BRUTE, witness)
        seen[code] = index
    return PermVerdict(True, Method.BRUTE)


def _count_roots(spec: BinomialSpec) -> int:
    ctx = spec.ctx
    if ctx.has_logs:
        return 1 + int(np.count_nonzero(value_logs(spec) < 0))
    return root_count(spec)


def hermite_is_pp(spec: BinomialSpec) -> PermVerdict:
    """Hermite's criterion: one root, and S(N) = 0 for 1 <= N <= Q-2 with p not dividing N.

    Power sums come from the closed-form single-index engine.
    """
    ctx = spec.ctx
    if ctx.order > HERMITE_CAP:
        raise RangeCapError(f"Hermite test limited to orders up to 2^20, got {ctx.order}")
    if _count_roots(spec) != 1:
        return PermVerdict(False, Method.HERMITE, _root_collision(spec))
    for N in range(1, ctx.order - 1):
        if N % spec.p == 0:
            continue
        total = power_sum_single(spec, N)
        if not total.is_zero():
            logger.debug(f"Hermite exponent N={N} fails for r={spec.r}")
            return PermVerdict(False, Method.HERMITE, HermiteWitness(N, total))
    return PermVerdict(True, Method.HERMITE)


def _poly_eval(ctx: FieldCtx, coeffs: Sequence[FieldElem], x: FieldElem) -> FieldElem:
    result = ctx.zero
    for c in reversed(coeffs):
        result = ctx.add(ctx.mul(result, x), c)
    return result


def hermite_is_pp_poly(ctx: FieldCtx, coeffs: Sequence[FieldElem]) -> PermVerdict:
    """Hermite's criterion for an arbitrary polynomial, constant coefficient first.

    Power sums are summed directly over the field.
    """
    if ctx.order > HERMITE_CAP:
        raise RangeCapError(f"Hermite test limited to orders up to 2^20, got {ctx.order}")
    values: List[FieldElem] = [_poly_eval(ctx, coeffs, _element_at(ctx, i)) for i in range(ctx.order)]
    roots = sum(1 for v in values if v.is_zero())
    if roots != 1:
        seen: Dict[FieldElem, int] = {}
        for index, value in enumerate(values):
            if value in seen:
                witness = CollisionWitness(_element_at(ctx, seen[value]), _element_at(ctx, index), value)
                return PermVerdict(False, Method.HERMITE, witness)
            seen[value] = index
    for N in range(1, ctx.order - 1):
        if N % ctx.p == 0:
            continue
        total = ctx.zero
        for value in values:
            total = ctx.add(total, ctx.pow(value, N))
        if not total.is_zero():
            return PermVerdict(False, Method.HERMITE, HermiteWitness(N, total))
    return PermVerdict(True, Method.HERMITE)


def mu_d_is_pp(spec: BinomialSpec) -> PermVerdict:
    """Subgroup criterion: gcd(r, q-1) = 1 and z^r (z + a)^(q-1) injective on mu_d.

    When -a lies in mu_d, f has q roots and the verdict carries a root collision.
    """
    ctx = spec.ctx
    d = spec.d
    if d > SUBGROUP_CAP:
        raise RangeCapError(f"subgroup criterion limited to d up to 2^26, got {d}")
    common = gcd(spec.r, spec.q - 1)
    if common > 1:
        return PermVerdict(False, Method.MU_D, GcdWitness(spec.r, common))
    if root_count(spec) != 1:
        return PermVerdict(False, Method.MU_D, _root_collision(spec))

    group = ctx.order - 1
    step = spec.q - 1
    if ctx.has_logs:
        z_logs = np.arange(d, dtype=np.int64) * step
        shifted = ctx.add_logs(z_logs, spec.a_log)
        g_logs = (z_logs * (spec.r % group) + shifted * step) % group
        hit = _first_collision(g_logs)
        if hit is None:
            return PermVerdict(True, Method.MU_D)
        i, j = hit
        witness = SubgroupCollisionWitness(
            ctx.elem_exp(i * step), ctx.elem_exp(j * step), ctx.elem_exp(int(g_logs[j]))
        )
        return PermVerdict(False, Method.MU_D, witness)

    generator = ctx.pow(ctx.primitive, step)
    seen: Dict[int, FieldElem] = {}
    z = ctx.one
    for _ in range(d):
        value = ctx.mul(ctx.pow(z, spec.r), ctx.pow(ctx.add(z, spec.a), step))
        code = ctx.to_int(value)
        if code in seen:
            return PermVerdict(False, Method.MU_D, SubgroupCollisionWitness(seen[code], z, value))
        seen[code] = z
        z = ctx.mul(z, generator)
    return PermVerdict(True, Method.MU_D)


def closed_form_is_pp(spec: BinomialSpec) -> PermVerdict:
    """Decide through gcd and root tests, the witness recipes (e = 3), the linearized
    rule for r = 1, and finally a closed-form Hermite sweep."""
    common = gcd(spec.r, spec.q - 1)
    if common > 1:
        return PermVerdict(False, Method.CLOSED_FORM, GcdWitness(spec.r, common))
    if root_count(spec) != 1:
        return PermVerdict(False, Method.CLOSED_FORM, _root_collision(spec))
    if spec.r == 1:
        # x^q + a x is additive; a single root means a trivial kernel
        return PermVerdict(True, Method.CLOSED_FORM)
    if spec.e == 3:
        found = witness_exponent(spec)
        if found is not None:
            N, cert = found
            return PermVerdict(False, Method.CLOSED_FORM, HermiteWitness(N, cert.value, cert.recipe))
    if spec.order > HERMITE_CAP:
        raise RangeCapError(f"closed-form sweep limited to orders up to 2^20, got {spec.order}")
    for N in range(1, spec.order - 1):
        if N % spec.p == 0:
            continue
        total = power_sum_single(spec, N)
        if not total.is_zero():
            return PermVerdict(False, Method.CLOSED_FORM, HermiteWitness(N, total))
    return PermVerdict(True, Method.CLOSED_FORM)
