"""
Toolkit service shared by the command line and the MCP server.

This module turns validated parameters into field summaries, verdict records,
certificates, claim reports and Hasse-Weil reports.
"""

from typing import Any, Callable, Dict, List, Optional, Sequence
import logging

from ..algebra.binomial import BinomialSpec
from ..algebra.ext_field import get_field, group_factorization
from ..algebra.prime_field import split_prime_power
from ..config import BRUTE_FORCE_CAP, DEFAULT_SAMPLES, DEFAULT_SEED, HERMITE_CAP, SUBGROUP_CAP
from ..errors import InputError
from ..utils.worker_pool import map_cells
from .closed_form import certify
from .hasse_weil import HWReport, theorem2_scan
from .perm_criteria import (
    PermVerdict,
    brute_force_is_pp,
    closed_form_is_pp,
    hermite_is_pp,
    mu_d_is_pp,
)
from .theorems import ClaimReport, FieldParams, run_claim, sample_a_exponents
from .validation_service import ValidationService

logger = logging.getLogger(__name__)

METHODS: Dict[str, Callable[[BinomialSpec], PermVerdict]] = {
    "brute": brute_force_is_pp,
    "hermite": hermite_is_pp,
    "mu": mu_d_is_pp,
    "closed": closed_form_is_pp,
}

CLAIMS = {
    "lemma4": "lemma4",
    "prop1": "prop1",
    "lemma5": "lemma5",
    "lemma6": "lemma6",
    "lemma5-6": "lemma5_6",
    "theorem1": "theorem1",
    "remark-even": "remark_even_char",
    "r1-linearized": "r1_linearized",
    "conjecture": "conjecture",
}


def _method_fits(name: str, spec: BinomialSpec) -> bool:
    if name == "brute":
        return spec.order <= BRUTE_FORCE_CAP
    if name == "mu":
        return spec.d <= SUBGROUP_CAP
    if name == "closed":
        return spec.order <= HERMITE_CAP or spec.r == 1
    return spec.order <= HERMITE_CAP


def verdict_record(spec: BinomialSpec, method: str, verdict: PermVerdict) -> Dict[str, Any]:
    record = spec.to_record()
    record["method"] = method
    record.update(is_pp=verdict.is_pp, witness=verdict.witness.to_record() if verdict.witness else None)
    return record


def _scan_cell(cell) -> Dict[str, Any]:
    p, m, e, r, a_exp, method = cell
    spec = BinomialSpec.from_exponent(p, m, e, r, a_exp)
    return verdict_record(spec, method, METHODS[method](spec))


class ToolkitService:
    """
    Service for running permutation tests and verification drivers.

    Provides high-level operations over validated parameters, building specs and
    records for both front ends.
    """

    def __init__(self):
        """Initialize service with validation."""
        self.validator = ValidationService()

    def field_info(self, p: int, m: int = 1, e: int = 3) -> Dict[str, Any]:
        """Summary of F_{q^e}: modulus, order, canonical omega, factorization of q^e - 1."""
        self.validator.require_valid("field", {"p": p, "m": m, "e": e})
        ctx = get_field(p, m * e)
        q = p**m
        factors = group_factorization(ctx)
        return {
            "p": p,
            "n": ctx.n,
            "order": ctx.order,
            "modulus": ctx.describe(),
            "primitive": str(ctx.primitive),
            "group_order": ctx.order - 1,
            "factorization": " * ".join(f"{prime}^{power}" for prime, power in factors.items()) or "1",
            "q": q,
            "d": (ctx.order - 1) // (q - 1),
        }

    def build_spec(
        self,
        p: int,
        m: int,
        e: int,
        r: int,
        a_exp: Optional[int] = None,
        a_coeffs: Optional[Sequence[int]] = None,
    ) -> BinomialSpec:
        if (a_exp is None) == (a_coeffs is None):
            raise InputError("give exactly one of a_exp or a_coeffs")
        if a_exp is not None:
            return BinomialSpec.from_exponent(p, m, e, r, a_exp)
        return BinomialSpec.from_coeffs(p, m, e, r, list(a_coeffs))

    def test_binomial(self, spec: BinomialSpec, method: str = "all") -> List[Dict[str, Any]]:
        """Verdict records for one method, or for every method that fits the caps."""
        if method != "all":
            if method not in METHODS:
                raise InputError(f"unknown method '{method}'")
            return [verdict_record(spec, method, METHODS[method](spec))]
        records = []
        for name, func in METHODS.items():
            if not _method_fits(name, spec):
                logger.info(f"skipping {name} for order {spec.order}")
                continue
            records.append(verdict_record(spec, name, func(spec)))
        return records

    @staticmethod
    def unanimous(records: Sequence[Dict[str, Any]]) -> bool:
        return len({record["is_pp"] for record in records}) <= 1

    def scan(
        self,
        p: int,
        m: int,
        e: int,
        r_min: int,
        r_max: int,
        a_exps: Sequence[int],
        method: str = "brute",
        jobs: Optional[int] = None,
    ) -> List[Dict[str, Any]]:
        """Verdict records over the (r, a) grid, ordered by (r, a-exponent)."""
        if method not in METHODS:
            raise InputError(f"unknown method '{method}'")
        cells = [(p, m, e, r, a, method) for r in range(r_min, r_max + 1) for a in sorted(a_exps)]
        logger.info(f"scanning {len(cells)} cells with {method}")
        return map_cells(_scan_cell, cells, jobs)

    def certificate(self, spec: BinomialSpec, N: int) -> Dict[str, Any]:
        record = spec.to_record()
        record.update(certify(spec, N).to_record())
        return record

    def sample(
        self,
        p: int,
        m: int,
        e: int,
        samples: int = DEFAULT_SAMPLES,
        seed: int = DEFAULT_SEED,
        full_sweep: bool = False,
    ) -> List[int]:
        return sample_a_exponents(FieldParams(p, m, e), samples, seed, full_sweep)

    def verify(
        self,
        claim: str,
        p: int,
        m: int = 1,
        e: int = 3,
        samples: int = DEFAULT_SAMPLES,
        seed: int = DEFAULT_SEED,
        full_sweep: bool = False,
        jobs: Optional[int] = None,
    ) -> ClaimReport:
        if claim not in CLAIMS:
            raise InputError(f"unknown claim '{claim}'; expected one of {', '.join(CLAIMS)}")
        return run_claim(CLAIMS[claim], FieldParams(p, m, e), samples, seed, full_sweep, jobs)

    def hw(
        self,
        q: int,
        e: int,
        r_values: Sequence[int],
        confirm: bool = False,
        samples: int = 3,
        seed: int = DEFAULT_SEED,
        jobs: Optional[int] = None,
    ) -> List[HWReport]:
        """Threshold reports, optionally confirmed on sampled a by the subgroup criterion."""
        a_exps: List[int] = []
        if confirm:
            p, m = split_prime_power(q)
            a_exps = sample_a_exponents(FieldParams(p, m, e), samples, seed)
        return theorem2_scan(q, e, r_values, a_exps, confirm=confirm, jobs=jobs)
