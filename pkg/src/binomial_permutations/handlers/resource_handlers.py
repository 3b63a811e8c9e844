"""
Resource handlers for the binomial permutation MCP server.

This module exposes stored verification reports as resources.
"""

from typing import List
import logging

from mcp import types
from pydantic import AnyUrl

from ..utils.report_store import ReportStore

logger = logging.getLogger(__name__)


class ResourceHandlers:
    """Handles all MCP resource operations for the toolkit server."""

    def __init__(self, report_store: ReportStore):
        """Initialize with required dependencies."""
        self.report_store = report_store

    async def list_resources(self) -> List[types.Resource]:
        """
        List stored reports.
        Each report is exposed with the report:// URI scheme.
        """
        return [
            types.Resource(
                uri=AnyUrl(f"report://stored/{name}"),
                name=f"Report: {name}",
                description=f"Verification report {name} (JSON lines)",
                mimeType="application/json",
            )
            for name in self.report_store.list_reports()
        ]

    async def read_resource(self, uri: AnyUrl) -> str:
        """
        Read a specific report's content by its URI.
        """
        if uri.scheme == "report":
            name = (uri.path or "").lstrip("/")
            if name:
                return await self.report_store.read_text(name)
            raise ValueError(f"Report not found: {name}")

        raise ValueError(f"Unsupported URI scheme: {uri.scheme}")
