"""
Verification drivers for the non-permutation claims over F_{q^3}.

Each driver builds a grid of (r, a) cells with a predicted verdict, evaluates them
against the exhaustive oracle (optionally in parallel), and folds the results in
(r, a-exponent) order into a ClaimReport. Every negative prediction must come with
evidence: a gcd violation, a nonzero power-sum certificate, or an oracle collision.
"""

from dataclasses import dataclass, field
from math import gcd
from time import perf_counter
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging
import random

from ..algebra.binomial import BinomialSpec, is_valid_a_exponent
from ..algebra.ext_field import FieldCtx, get_field
from ..algebra.prime_field import p_digits, require_prime
from ..config import (
    BRUTE_FORCE_CAP,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DISAGREEMENT_CAP,
    ORACLE_BRUTE_LIMIT,
)
from ..errors import ConsistencyError, InputError
from ..utils.worker_pool import map_cells
from .closed_form import certify, designated_exponent, recipe_exponents, witness_exponent
from .perm_criteria import PermVerdict, brute_force_is_pp, mu_d_is_pp

logger = logging.getLogger(__name__)

CLAIM_IDS = (
    "lemma4",
    "prop1",
    "lemma5",
    "lemma6",
    "lemma5_6",
    "theorem1",
    "remark_even_char",
    "r1_linearized",
    "conjecture",
)

# Sampling from an explicit list of valid exponents below this group order
_SAMPLE_LIST_LIMIT = 2**22


@dataclass(frozen=True)
class FieldParams:
    """The field F_{q^e} with q = p^m."""

    p: int
    m: int = 1
    e: int = 3

    def __post_init__(self):
        require_prime(self.p)
        if self.m < 1 or self.e < 1:
            raise InputError(f"m and e must be positive, got m={self.m}, e={self.e}")

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def order(self) -> int:
        return self.q**self.e

    @property
    def d(self) -> int:
        return (self.order - 1) // (self.q - 1)

    @property
    def ctx(self) -> FieldCtx:
        return get_field(self.p, self.m * self.e)

    def to_record(self) -> Dict[str, int]:
        return {"p": self.p, "m": self.m, "e": self.e}


@dataclass(frozen=True)
class Disagreement:
    r: int
    a_exp: int
    predicted: bool
    observed: bool
    reason: Optional[str] = None

    def to_record(self) -> Dict[str, Any]:
        record = {"r": self.r, "a_exp": self.a_exp, "predicted": self.predicted, "observed": self.observed}
        if self.reason:
            record["reason"] = self.reason
        return record


@dataclass
class ClaimReport:
    claim_id: str
    params: FieldParams
    cases_run: int = 0
    cases_agreeing: int = 0
    disagreements: List[Disagreement] = field(default_factory=list)
    notes: Dict[str, Any] = field(default_factory=dict)
    wall_time_ms: Optional[int] = None

    @property
    def verified(self) -> bool:
        return self.cases_agreeing == self.cases_run

    def to_record(self, include_timing: bool = False) -> Dict[str, Any]:
        record: Dict[str, Any] = {"claim_id": self.claim_id}
        record.update(self.params.to_record())
        record["cases_run"] = self.cases_run
        record["cases_agreeing"] = self.cases_agreeing
        record["disagreements"] = [d.to_record() for d in self.disagreements]
        record["notes"] = self.notes
        if include_timing and self.wall_time_ms is not None:
            record["wall_time_ms"] = self.wall_time_ms
        return record


@dataclass(frozen=True)
class Cell:
    """One (r, a) case; ``predicted_pp`` None marks an observational cell.

    ``require`` names the evidence a negative prediction must carry: "gcd" or
    "certificate"; None accepts any evidence. ``exponent`` pins the certificate
    exponent instead of trying every recipe.
    """

    p: int
    m: int
    e: int
    r: int
    a_exp: int
    predicted_pp: Optional[bool]
    require: Optional[str] = None
    exponent: Optional[int] = None
    recipe: Optional[str] = None


@dataclass(frozen=True)
class CellResult:
    r: int
    a_exp: int
    predicted: bool
    observed: bool
    evidence: Optional[str] = None
    reason: Optional[str] = None
    certificate: Optional[Dict[str, Any]] = None

    @property
    def agrees(self) -> bool:
        return self.predicted == self.observed and self.reason is None


def oracle_verdict(spec: BinomialSpec) -> PermVerdict:
    """Brute force on small fields; the subgroup criterion above, with brute-force
    confirmation of negative verdicts while the field is enumerable."""
    if spec.order <= ORACLE_BRUTE_LIMIT:
        return brute_force_is_pp(spec)
    verdict = mu_d_is_pp(spec)
    if not verdict.is_pp and spec.order <= BRUTE_FORCE_CAP:
        confirmation = brute_force_is_pp(spec)
        if confirmation.is_pp:
            raise ConsistencyError(f"subgroup criterion and brute force disagree on {spec.to_record()}")
    return verdict


def _collect_evidence(cell: Cell, spec: BinomialSpec, verdict: PermVerdict) -> Tuple[Optional[str], Optional[Dict[str, Any]]]:
    common = gcd(spec.r, spec.q - 1)
    if cell.require == "gcd":
        return ("gcd" if common > 1 else None), None

    cert = None
    if cell.exponent is not None:
        cert = certify(spec, cell.exponent, cell.recipe)
    elif cell.require == "certificate" and spec.e == 3:
        found = witness_exponent(spec)
        cert = found[1] if found else None
    if cert is not None and cert.nonzero and cert.agree:
        return "certificate", cert.to_record()
    if cell.require == "certificate":
        return None, cert.to_record() if cert is not None else None

    if common > 1:
        return "gcd", None
    if spec.e == 3:
        found = witness_exponent(spec)
        if found is not None:
            return "certificate", None
    if not verdict.is_pp:
        return verdict.witness.kind, None
    return None, None


def evaluate_cell(cell: Cell) -> CellResult:
    """Run the oracle on one cell and check the prediction and its evidence."""
    spec = BinomialSpec.from_exponent(cell.p, cell.m, cell.e, cell.r, cell.a_exp)
    verdict = oracle_verdict(spec)
    observed = verdict.is_pp
    if cell.predicted_pp is None:
        return CellResult(cell.r, cell.a_exp, observed, observed)

    evidence, certificate = None, None
    reason = None
    if not cell.predicted_pp:
        evidence, certificate = _collect_evidence(cell, spec, verdict)
        if evidence is None:
            reason = f"missing {cell.require or 'any'} evidence"
    if cell.predicted_pp != observed and reason is None:
        reason = "verdict mismatch"
    logger.debug(f"cell r={cell.r} a_exp={cell.a_exp}: predicted={cell.predicted_pp} observed={observed}")
    return CellResult(cell.r, cell.a_exp, cell.predicted_pp, observed, evidence, reason, certificate)


def fold_results(claim_id: str, params: FieldParams, results: Sequence[CellResult]) -> ClaimReport:
    """Deterministic merge ordered by (r, a-exponent)."""
    report = ClaimReport(claim_id, params)
    evidence: Dict[str, int] = {}
    certificates: List[Dict[str, Any]] = []
    for result in sorted(results, key=lambda c: (c.r, c.a_exp)):
        report.cases_run += 1
        if result.agrees:
            report.cases_agreeing += 1
        elif len(report.disagreements) < DISAGREEMENT_CAP:
            report.disagreements.append(
                Disagreement(result.r, result.a_exp, result.predicted, result.observed, result.reason)
            )
        if result.evidence:
            evidence[result.evidence] = evidence.get(result.evidence, 0) + 1
        if result.certificate is not None and len(certificates) < DISAGREEMENT_CAP:
            certificates.append({"r": result.r, "a_exp": result.a_exp, **result.certificate})
    report.notes["evidence"] = dict(sorted(evidence.items()))
    if certificates:
        report.notes["certificates"] = certificates
    if report.cases_run > report.cases_agreeing:
        logger.warning(
            f"{claim_id} on {params.to_record()}: {report.cases_run - report.cases_agreeing} disagreements"
        )
    return report


def run_cells(claim_id: str, params: FieldParams, cells: Sequence[Cell], jobs: Optional[int] = None) -> Tuple[ClaimReport, List[CellResult]]:
    logger.info(f"{claim_id}: {len(cells)} cells over F_{params.q}^{params.e}")
    start = perf_counter()
    results = map_cells(evaluate_cell, list(cells), jobs)
    report = fold_results(claim_id, params, results)
    report.wall_time_ms = int((perf_counter() - start) * 1000)
    return report, results


def sample_a_exponents(
    params: FieldParams,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    full_sweep: bool = False,
) -> List[int]:
    """Sorted omega-exponents i of valid a = omega^i, i.e. f has a single root.

    Exponents are drawn by a seeded generator without replacement; ``full_sweep``
    returns every valid exponent.
    """
    if params.q == 2:
        return []
    ctx = params.ctx
    group = params.order - 1
    if full_sweep or group <= _SAMPLE_LIST_LIMIT:
        valid = [i for i in range(group) if is_valid_a_exponent(ctx, params.q, i)]
        if full_sweep or len(valid) <= samples:
            return valid
        return sorted(random.Random(seed).sample(valid, samples))
    rng = random.Random(seed)
    chosen = set()
    while len(chosen) < samples:
        i = rng.randrange(group)
        if is_valid_a_exponent(ctx, params.q, i):
            chosen.add(i)
    return sorted(chosen)


def _require_cubic(params: FieldParams, odd: bool = False, even: bool = False) -> None:
    if params.e != 3:
        raise InputError(f"claim needs e = 3, got e = {params.e}")
    if odd and params.p == 2:
        raise InputError("claim needs odd characteristic")
    if even and params.p != 2:
        raise InputError("claim needs characteristic 2")


def _cube_degree(params: FieldParams) -> int:
    q = params.q
    return q * q + q + 1


def verify_lemma4(params: FieldParams, a_exps: Sequence[int], jobs: Optional[int] = None) -> ClaimReport:
    """r = 1 is a permutation; r not of the form r0 q + 1, and r = q^2 + q + 1, are not."""
    _require_cubic(params)
    q, D = params.q, _cube_degree(params)
    _, N = recipe_exponents(q)[0]
    cells = []
    skipped = 0
    for r in range(1, D + 1):
        for a_exp in a_exps:
            if r == 1:
                cells.append(Cell(params.p, params.m, params.e, r, a_exp, True))
            elif r == D:
                cells.append(Cell(params.p, params.m, params.e, r, a_exp, False, "certificate", N, "alpha-gamma"))
            elif r % q != 1:
                cells.append(Cell(params.p, params.m, params.e, r, a_exp, False))
        if r not in (1, D) and r % q == 1:
            skipped += 1
    report, _ = run_cells("lemma4", params, cells, jobs)
    report.notes["skipped_r_of_form_r0q+1"] = skipped
    return report


def prop1_eligible(p: int, r0: int) -> bool:
    """Every base-p digit of (r0 - 2)/2 is at most (p - 1)/2."""
    return all(digit <= (p - 1) // 2 for digit in p_digits((r0 - 2) // 2, p).digits)


def verify_prop1(params: FieldParams, a_exps: Sequence[int], jobs: Optional[int] = None) -> ClaimReport:
    """r = r0 q + 1: odd r0 fails the gcd test; eligible even r0 carry a certificate."""
    _require_cubic(params, odd=True)
    q = params.q
    half = (q - 1) // 2
    N = half + half * q + (q - 1) * q * q
    cells = []
    ineligible = []
    for r0 in range(1, q + 1):
        r = r0 * q + 1
        if r0 % 2:
            cells.extend(Cell(params.p, params.m, params.e, r, a, False, "gcd") for a in a_exps)
        elif r0 <= q - 1 and prop1_eligible(params.p, r0):
            cells.extend(
                Cell(params.p, params.m, params.e, r, a, False, "certificate", N, "half-alpha-beta") for a in a_exps
            )
        else:
            ineligible.append(r0)
    report, _ = run_cells("prop1", params, cells, jobs)
    report.notes["ineligible_r0"] = ineligible
    return report


def verify_lemma5_6(
    params: FieldParams,
    a_exps: Sequence[int],
    branch: Optional[str] = None,
    jobs: Optional[int] = None,
) -> ClaimReport:
    """Even r0 in [2, q - 1]: the designated exponent k (q - 1) certifies r = r0 q + 1.

    ``branch`` selects "lemma5" (p does not divide r0) or "lemma6" (p divides r0);
    None runs both. The certificate is mandatory when gcd(r, q - 1) = 1 and recorded
    otherwise.
    """
    _require_cubic(params, odd=True)
    if branch not in (None, "lemma5", "lemma6"):
        raise InputError(f"unknown branch {branch}")
    q, p = params.q, params.p
    cells = []
    designated = {}
    for r0 in range(2, q, 2):
        cell_branch = "lemma6" if r0 % p == 0 else "lemma5"
        if branch is not None and branch != cell_branch:
            continue
        r = r0 * q + 1
        name, N = designated_exponent(q, r0)
        designated[r0] = name
        require = "certificate" if gcd(r, q - 1) == 1 else None
        cells.extend(Cell(p, params.m, params.e, r, a, False, require, N, name) for a in a_exps)
    report, _ = run_cells(branch or "lemma5_6", params, cells, jobs)
    report.notes["designated"] = {str(r0): name for r0, name in designated.items()}
    return report


def _r0_gcd_filter(q: int, pp_set: Sequence[int]) -> Dict[str, Any]:
    """For observed permutations with r = r0 q + 1, whether gcd(r0 + 1, q - 1) = 1."""
    checked = [r for r in pp_set if (r - 1) % q == 0]
    violations = [r for r in checked if gcd((r - 1) // q + 1, q - 1) != 1]
    return {"checked": len(checked), "consistent": not violations, "violations": violations}


def _pp_set(results: Sequence[CellResult]) -> List[int]:
    return sorted({c.r for c in results if c.observed})


def verify_theorem1(params: FieldParams, a_exps: Sequence[int], jobs: Optional[int] = None) -> ClaimReport:
    """Exhaustive r in [1, q^2 + q + 1]: the binomial permutes exactly when r = 1."""
    _require_cubic(params, odd=True)
    D = _cube_degree(params)
    cells = [
        Cell(params.p, params.m, params.e, r, a, r == 1)
        for r in range(1, D + 1)
        for a in a_exps
    ]
    report, results = run_cells("theorem1", params, cells, jobs)
    pp_set = _pp_set(results)
    report.notes["pp_set"] = pp_set
    report.notes["conjecture"] = "conjecture-consistent" if pp_set in ([], [1]) else "counterexample"
    report.notes["r0_gcd_filter"] = _r0_gcd_filter(params.q, pp_set)
    return report


def _all_exponents(params: FieldParams, a_exps: Optional[Sequence[int]]) -> List[int]:
    return list(range(params.order - 1)) if a_exps is None else list(a_exps)


def verify_remark_even_char(
    params: FieldParams,
    a_exps: Optional[Sequence[int]] = None,
    jobs: Optional[int] = None,
) -> ClaimReport:
    """Characteristic 2, r = q^2 + 1: permutation exactly when a^(q^2+q+1) != 1.

    All nonzero a are checked unless ``a_exps`` is given.
    """
    _require_cubic(params, even=True)
    q = params.q
    r = q * q + 1
    cells = [
        Cell(params.p, params.m, params.e, r, a, a % (q - 1) != 0)
        for a in _all_exponents(params, a_exps)
    ]
    report, results = run_cells("remark_even_char", params, cells, jobs)
    report.notes["r"] = r
    report.notes["pp_count"] = sum(1 for c in results if c.observed)
    return report


def verify_r1_linearized(
    params: FieldParams,
    a_exps: Optional[Sequence[int]] = None,
    jobs: Optional[int] = None,
) -> ClaimReport:
    """r = 1: x^q + a x permutes exactly when a^(q^2+q+1) != -1, over every nonzero a."""
    _require_cubic(params)
    ctx = params.ctx
    D = _cube_degree(params)
    minus_one = ctx.neg(ctx.one)
    cells = [
        Cell(params.p, params.m, params.e, 1, a, ctx.pow(ctx.elem_exp(a), D) != minus_one)
        for a in _all_exponents(params, a_exps)
    ]
    report, results = run_cells("r1_linearized", params, cells, jobs)
    report.notes["pp_count"] = sum(1 for c in results if c.observed)
    return report


def scan_conjecture(params: FieldParams, a_exps: Sequence[int], jobs: Optional[int] = None) -> ClaimReport:
    """Observational scan of r in [1, (q^e - 1)/(q - 1)]: any permutation with r != 1 is
    recorded as a counterexample, never counted as a disagreement."""
    cells = [
        Cell(params.p, params.m, params.e, r, a, None)
        for r in range(1, params.d + 1)
        for a in a_exps
    ]
    report, results = run_cells("conjecture", params, cells, jobs)
    counterexamples = [
        {"r": c.r, "a_exp": c.a_exp} for c in sorted(results, key=lambda c: (c.r, c.a_exp)) if c.observed and c.r != 1
    ]
    report.notes["pp_set"] = _pp_set(results)
    report.notes["status"] = "counterexample" if counterexamples else "conjecture-consistent"
    report.notes["counterexamples"] = counterexamples[:DISAGREEMENT_CAP]
    report.notes["r0_gcd_filter"] = _r0_gcd_filter(params.q, report.notes["pp_set"])
    return report


def run_claim(
    claim_id: str,
    params: FieldParams,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    full_sweep: bool = False,
    jobs: Optional[int] = None,
) -> ClaimReport:
    """Dispatch a claim by id with seeded a-sampling.

    The two claims about every nonzero a always run exhaustively.
    """
    if claim_id == "remark_even_char":
        return verify_remark_even_char(params, jobs=jobs)
    if claim_id == "r1_linearized":
        return verify_r1_linearized(params, jobs=jobs)
    a_exps = sample_a_exponents(params, samples, seed, full_sweep)
    if not a_exps:
        raise InputError(f"no valid a over F_{params.q}^{params.e}; claim '{claim_id}' would hold vacuously")
    if claim_id == "lemma4":
        return verify_lemma4(params, a_exps, jobs)
    if claim_id == "prop1":
        return verify_prop1(params, a_exps, jobs)
    if claim_id in ("lemma5", "lemma6", "lemma5_6"):
        return verify_lemma5_6(params, a_exps, None if claim_id == "lemma5_6" else claim_id, jobs)
    if claim_id == "theorem1":
        return verify_theorem1(params, a_exps, jobs)
    if claim_id == "conjecture":
        return scan_conjecture(params, a_exps, jobs)
    raise InputError(f"unknown claim '{claim_id}'; expected one of {', '.join(CLAIM_IDS)}")
