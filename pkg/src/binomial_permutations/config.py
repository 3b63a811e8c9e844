"""
Size caps, defaults and environment lookups for the toolkit.

Caps are expressed as field orders (number of elements) unless stated otherwise.
"""

import os
from pathlib import Path
from typing import Optional

# Field construction
MAX_FIELD_ORDER = 2**40
LOG_TABLE_CAP = 2**24
MAX_INT_BITS = 128

# Exhaustive operations
BRUTE_FORCE_CAP = 2**26
HERMITE_CAP = 2**20
SUBGROUP_CAP = 2**26
DIRECT_SUM_CAP = 2**26
CURVE_COUNT_CAP = 2**12
PAIRWISE_CAP = 2**8

# Power-sum certificates carry a direct summation only up to this order
CERT_DIRECT_CAP = 2**20

# Claim drivers switch from brute force to the subgroup criterion above this order
ORACLE_BRUTE_LIMIT = 2**20

DISAGREEMENT_CAP = 100
DEFAULT_SAMPLES = 10
DEFAULT_SEED = 0

JOBS_ENV = "BINOMIAL_PP_JOBS"
REPORTS_ENV = "BINOMIAL_PP_REPORTS"

REPORTS_PATH = Path(os.environ.get(REPORTS_ENV, Path(__file__).parent / "data" / "reports"))


def default_jobs() -> int:
    """Worker count from the environment, 1 when unset or malformed."""
    raw: Optional[str] = os.environ.get(JOBS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
