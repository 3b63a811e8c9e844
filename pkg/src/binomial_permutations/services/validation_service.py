"""
Validation service for command and tool parameters.

This module checks run configurations before any field is built, collecting every
problem instead of stopping at the first one.
"""

from typing import Any, Dict, List, Optional
import logging

from sympy import isprime

from ..algebra.prime_field import split_prime_power
from ..errors import InputError
from ..utils.formatting import FORMATS

logger = logging.getLogger(__name__)


class ValidationService:
    """Service for validating run configurations."""

    def __init__(self):
        """Initialize validation service with rules."""
        self.methods = ["brute", "hermite", "mu", "closed", "all"]
        self.claims = [
            "lemma4", "prop1", "lemma5", "lemma6", "lemma5-6",
            "theorem1", "remark-even", "r1-linearized", "conjecture",
        ]
        self.formats = list(FORMATS)

    def validate_run_config(self, subcommand: str, data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Validate the parameters of one subcommand.

        Args:
            subcommand: Name of the subcommand being validated
            data: Parameter dictionary (argparse namespace as dict, or tool arguments)

        Returns:
            Dict with validation results
        """
        errors = []

        try:
            if subcommand == "hw":
                errors.extend(self._validate_hw(data))
            else:
                errors.extend(self._validate_field(data))
            if subcommand == "test":
                errors.extend(self._validate_test(data))
            elif subcommand == "scan":
                errors.extend(self._validate_scan(data))
            elif subcommand == "verify":
                errors.extend(self._validate_verify(data))

            errors.extend(self._validate_common_fields(data))

        except Exception as e:
            errors.append(f"Validation error: {str(e)}")

        return {
            "valid": len(errors) == 0,
            "errors": errors
        }

    def require_valid(self, subcommand: str, data: Dict[str, Any]) -> None:
        """Raise InputError listing every problem found."""
        result = self.validate_run_config(subcommand, data)
        if not result["valid"]:
            raise InputError("; ".join(result["errors"]))

    def _order(self, data: Dict[str, Any]) -> Optional[int]:
        p, m, e = data.get("p"), data.get("m", 1), data.get("e", 3)
        if not all(isinstance(v, int) for v in (p, m, e)):
            return None
        return p ** (m * e)

    def _validate_field(self, data: Dict[str, Any]) -> List[str]:
        errors = []
        p = data.get("p")
        if not isinstance(p, int) or not isprime(p):
            errors.append(f"p must be a prime, got {p}")
        for name in ("m", "e"):
            value = data.get(name, 1)
            if not isinstance(value, int) or value < 1:
                errors.append(f"{name} must be a positive integer")
        return errors

    def _validate_a(self, data: Dict[str, Any], required: bool) -> List[str]:
        errors = []
        a_exp, a_coeffs = data.get("a_exp"), data.get("a_coeffs")
        if a_exp is not None and a_coeffs is not None:
            errors.append("give a either as --a-exp or as --a-coeffs, not both")
        elif required and a_exp is None and a_coeffs is None:
            errors.append("a is required: use --a-exp or --a-coeffs")
        if a_exp is not None and (not isinstance(a_exp, int) or a_exp < 0):
            errors.append("a_exp must be a nonnegative integer")
        return errors

    def _validate_test(self, data: Dict[str, Any]) -> List[str]:
        errors = self._validate_a(data, required=True)
        r = data.get("r")
        order = self._order(data)
        if not isinstance(r, int) or r < 1:
            errors.append("r must be a positive integer")
        elif order is not None and r > order - 1:
            errors.append(f"r must lie in [1, {order - 1}]")
        method = data.get("method", "all")
        if method not in self.methods:
            errors.append(f"method must be one of: {', '.join(self.methods)}")
        return errors

    def _validate_scan(self, data: Dict[str, Any]) -> List[str]:
        errors = self._validate_a(data, required=False)
        order = self._order(data)
        r_min, r_max = data.get("r_min"), data.get("r_max")
        if r_min is not None and (not isinstance(r_min, int) or r_min < 1):
            errors.append("r_min must be a positive integer")
        if r_max is not None and order is not None and isinstance(r_max, int) and r_max > order - 1:
            errors.append(f"r_max must not exceed {order - 1}")
        method = data.get("method", "brute")
        if method not in self.methods or method == "all":
            errors.append(f"scan method must be one of: {', '.join(self.methods[:-1])}")
        return errors

    def _validate_verify(self, data: Dict[str, Any]) -> List[str]:
        errors = []
        if data.get("claim") not in self.claims:
            errors.append(f"claim must be one of: {', '.join(self.claims)}")
        return errors

    def _validate_hw(self, data: Dict[str, Any]) -> List[str]:
        errors = []
        q = data.get("q")
        try:
            split_prime_power(q)
        except InputError:
            errors.append(f"q must be a prime power, got {q}")
        e = data.get("e")
        if not isinstance(e, int) or e < 1:
            errors.append("e must be a positive integer")
        r, r_min, r_max = data.get("r"), data.get("r_min"), data.get("r_max")
        if r is None and (r_min is None or r_max is None):
            errors.append("give --r or both --r-min and --r-max")
        for name, value in (("r", r), ("r_min", r_min)):
            if value is not None and (not isinstance(value, int) or value < 1):
                errors.append(f"{name} must be a positive integer")
        return errors

    def _validate_common_fields(self, data: Dict[str, Any]) -> List[str]:
        """Validate options shared by all subcommands."""
        errors = []

        fmt = data.get("format")
        if fmt is not None and fmt not in self.formats:
            errors.append(f"format must be one of: {', '.join(self.formats)}")
        jobs = data.get("jobs")
        if jobs is not None and (not isinstance(jobs, int) or jobs < 1):
            errors.append("jobs must be a positive integer")
        samples = data.get("samples")
        if samples is not None and (not isinstance(samples, int) or samples < 0):
            errors.append("samples must be a nonnegative integer")

        return errors

    def get_validation_rules(self, subcommand: str) -> Dict[str, Any]:
        """Get validation rules for a specific subcommand."""
        rules = {
            "field": {"p": "Prime", "m": "Positive integer", "e": "Positive integer", "order": "p^(m e) <= 2^40 (resource cap)"},
            "test": {
                "a": "Exactly one of a_exp (omega-exponent) or a_coeffs",
                "r": "Integer in [1, q^e - 1]",
                "method": f"One of: {', '.join(self.methods)}",
            },
            "scan": {"r_min/r_max": "Range within [1, q^e - 1]; empty ranges allowed"},
            "verify": {"claim": f"One of: {', '.join(self.claims)}"},
            "hw": {"q": "Prime power", "e": "Positive integer", "r": "--r or --r-min/--r-max"},
        }

        return rules.get(subcommand, {})
