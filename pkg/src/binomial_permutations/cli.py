"""
Command-line front end.

Subcommands: field, test, scan, verify, hw, serve. Records go to stdout in the chosen
format; logging goes to stderr. Exit codes: 0 success, 1 disagreement, 2 input error,
3 resource cap.
"""

from dataclasses import dataclass, fields
from typing import Any, Dict, List, Optional, Sequence, Tuple
import argparse
import asyncio
import logging
import sys

from .config import DEFAULT_SAMPLES, DEFAULT_SEED
from .errors import InputError, ToolkitError
from .services.toolkit_service import CLAIMS, ToolkitService
from .utils.formatting import FORMATS, render

logger = logging.getLogger(__name__)


@dataclass
class RunConfig:
    subcommand: str
    p: Optional[int] = None
    m: int = 1
    e: int = 3
    r: Optional[int] = None
    r_min: Optional[int] = None
    r_max: Optional[int] = None
    a_exp: Optional[int] = None
    a_coeffs: Optional[List[int]] = None
    method: Optional[str] = None
    claim: Optional[str] = None
    format: str = "json"
    seed: int = DEFAULT_SEED
    jobs: Optional[int] = None
    full_sweep: bool = False
    q: Optional[int] = None
    samples: int = DEFAULT_SAMPLES
    timing: bool = False
    confirm: bool = False
    N: Optional[int] = None

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        values = vars(args)
        names = {f.name for f in fields(cls)}
        config = cls(**{k: v for k, v in values.items() if k in names and k != "a_coeffs"})
        raw = values.get("a_coeffs")
        if raw is not None:
            try:
                config.a_coeffs = [int(c) for c in raw.split(",") if c.strip() != ""]
            except ValueError:
                raise InputError(f"malformed --a-coeffs '{raw}'")
        return config

    def as_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _add_field_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="prime characteristic")
    parser.add_argument("--m", type=int, default=1, help="q = p^m (default: 1)")
    parser.add_argument("--e", type=int, default=3, help="field is F_{q^e} (default: 3)")


def _add_a_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a-exp", dest="a_exp", type=int, help="a as an exponent of the canonical omega")
    parser.add_argument("--a-coeffs", dest="a_coeffs", help="a as coefficients c0,c1,... (constant first)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $BINOMIAL_PP_JOBS or 1)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--log-level", dest="log_level", default="WARNING")

    parser = argparse.ArgumentParser(
        prog="binomial-permutations",
        description="Permutation tests for binomials x^r (x^(q-1) + a) over F_{q^e}",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    field_cmd = sub.add_parser("field", parents=[common], help="construct a field and summarize it")
    _add_field_args(field_cmd)

    test = sub.add_parser("test", parents=[common], help="test one binomial")
    _add_field_args(test)
    test.add_argument("--r", type=int, required=True)
    _add_a_args(test)
    test.add_argument("--method", choices=["brute", "hermite", "mu", "closed", "all"], default="all")

    scan = sub.add_parser("scan", parents=[common], help="test a grid of (r, a)")
    _add_field_args(scan)
    scan.add_argument("--r-min", dest="r_min", type=int, default=1)
    scan.add_argument("--r-max", dest="r_max", type=int, default=None, help="default: (q^e - 1)/(q - 1)")
    _add_a_args(scan)
    scan.add_argument("--method", choices=["brute", "hermite", "mu", "closed"], default="brute")
    scan.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    scan.add_argument("--full-sweep", dest="full_sweep", action="store_true")

    verify = sub.add_parser("verify", parents=[common], help="verify a claim on a concrete field")
    _add_field_args(verify)
    verify.add_argument("--claim", choices=list(CLAIMS), required=True)
    verify.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    verify.add_argument("--full-sweep", dest="full_sweep", action="store_true")
    verify.add_argument("--timing", action="store_true", help="include wall_time_ms in the record")

    hw = sub.add_parser("hw", parents=[common], help="Hasse-Weil threshold reports")
    hw.add_argument("--q", type=int, required=True)
    hw.add_argument("--e", type=int, required=True)
    hw.add_argument("--r", type=int)
    hw.add_argument("--r-min", dest="r_min", type=int)
    hw.add_argument("--r-max", dest="r_max", type=int)
    hw.add_argument("--confirm", action="store_true", help="confirm with the subgroup criterion on sampled a")
    hw.add_argument("--samples", type=int, default=3)

    certificate = sub.add_parser("certificate", parents=[common], help="evaluate one power sum")
    _add_field_args(certificate)
    certificate.add_argument("--r", type=int, required=True)
    _add_a_args(certificate)
    certificate.add_argument("--N", dest="N", type=int, required=True)

    sub.add_parser("serve", parents=[common], help="run the MCP server on stdio")
    return parser


def cmd_field_info(service: ToolkitService, config: RunConfig) -> Tuple[List[Dict[str, Any]], str, int]:
    return [service.field_info(config.p, config.m, config.e)], "field", 0


def cmd_test(service: ToolkitService, config: RunConfig) -> Tuple[List[Dict[str, Any]], str, int]:
    spec = service.build_spec(config.p, config.m, config.e, config.r, config.a_exp, config.a_coeffs)
    records = service.test_binomial(spec, config.method)
    if service.unanimous(records):
        return records, "verdict", 0
    logger.error(f"methods disagree on {spec.to_record()}")
    return records, "verdict", 1


def _scan_exponents(service: ToolkitService, config: RunConfig) -> List[int]:
    if config.a_exp is not None or config.a_coeffs is not None:
        return [service.build_spec(config.p, config.m, config.e, 1, config.a_exp, config.a_coeffs).a_log]
    return service.sample(config.p, config.m, config.e, config.samples, config.seed, config.full_sweep)


def cmd_scan(service: ToolkitService, config: RunConfig) -> Tuple[List[Dict[str, Any]], str, int]:
    q = config.p**config.m
    r_max = config.r_max if config.r_max is not None else (q**config.e - 1) // (q - 1)
    if config.r_min > r_max:
        return [], "verdict", 0
    a_exps = _scan_exponents(service, config)
    records = service.scan(config.p, config.m, config.e, config.r_min, r_max, a_exps, config.method, config.jobs)
    return records, "verdict", 0


def cmd_verify(service: ToolkitService, config: RunConfig) -> Tuple[List[Dict[str, Any]], str, int]:
    report = service.verify(
        config.claim, config.p, config.m, config.e,
        config.samples, config.seed, config.full_sweep, config.jobs,
    )
    return [report.to_record(include_timing=config.timing)], "claim", 0 if report.verified else 1


def cmd_hw(service: ToolkitService, config: RunConfig) -> Tuple[List[Dict[str, Any]], str, int]:
    r_values = [config.r] if config.r is not None else list(range(config.r_min, config.r_max + 1))
    reports = service.hw(config.q, config.e, r_values, config.confirm, config.samples, config.seed, config.jobs)
    status = 1 if any(report.contradicted for report in reports) else 0
    return [report.to_record() for report in reports], "hw", status


def cmd_certificate(service: ToolkitService, config: RunConfig) -> Tuple[List[Dict[str, Any]], str, int]:
    spec = service.build_spec(config.p, config.m, config.e, config.r, config.a_exp, config.a_coeffs)
    return [service.certificate(spec, config.N)], "certificate", 0


COMMANDS = {
    "field": cmd_field_info,
    "test": cmd_test,
    "scan": cmd_scan,
    "verify": cmd_verify,
    "hw": cmd_hw,
    "certificate": cmd_certificate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit status."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )

    if args.subcommand == "serve":
        from . import server

        asyncio.run(server.main())
        return 0

    try:
        config = RunConfig.from_namespace(args)
        service = ToolkitService()
        service.validator.require_valid(config.subcommand, config.as_dict())
        records, kind, status = COMMANDS[config.subcommand](service, config)
    except ToolkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    sys.stdout.write(render(records, kind, config.format))
    return status
