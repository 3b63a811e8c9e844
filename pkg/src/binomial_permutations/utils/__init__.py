"""
Utilities: worker pool, output formatting and the report store.
"""

from .report_store import ReportStore
from .worker_pool import map_cells

__all__ = ['ReportStore', 'map_cells']
