"""
Deterministic fan-out of independent cells over a process pool.

Results come back in submission order whatever the worker count, so callers can
fold them without re-sorting.
"""

from multiprocessing import Pool
from typing import Callable, List, Optional, Sequence, TypeVar
import logging

from ..config import default_jobs

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_jobs(jobs: Optional[int]) -> int:
    """Explicit worker count, else the environment default."""
    if jobs is None:
        return default_jobs()
    return max(1, int(jobs))


def map_cells(func: Callable[[T], R], cells: Sequence[T], jobs: Optional[int] = None) -> List[R]:
    """Apply ``func`` to every cell; ``func`` must be a module-level function."""
    workers = min(resolve_jobs(jobs), max(1, len(cells)))
    if workers == 1:
        return [func(cell) for cell in cells]
    chunksize = max(1, len(cells) // (workers * 4))
    logger.info(f"dispatching {len(cells)} cells to {workers} workers")
    with Pool(processes=workers) as pool:
        return pool.map(func, cells, chunksize=chunksize)
