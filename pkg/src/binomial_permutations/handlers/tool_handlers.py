"""
Tool handlers for the binomial permutation MCP server.

This module contains all the tool handling logic, delegating the mathematics to
the toolkit service and persisting verification reports in the report store.
"""

from typing import Any, Dict, List
import json
import logging

from mcp import types

from ..errors import ToolkitError
from ..services.toolkit_service import ToolkitService
from ..utils.report_store import ReportStore

logger = logging.getLogger(__name__)


def _text(payload: Any) -> List[types.TextContent]:
    if not isinstance(payload, str):
        payload = json.dumps(payload, indent=2)
    return [types.TextContent(type="text", text=payload)]


def _error(action: str, e: Exception) -> List[types.TextContent]:
    return [types.TextContent(type="text", text=f"❌ Error {action}: {str(e)}")]


class ToolHandlers:
    """Handles all MCP tool operations for the toolkit server."""

    def __init__(self, report_store: ReportStore):
        """Initialize with required dependencies."""
        self.report_store = report_store
        self.toolkit = ToolkitService()

    def _field_args(self, arguments: Dict[str, Any]) -> Dict[str, int]:
        if "p" not in arguments:
            raise ValueError("Missing p")
        return {"p": int(arguments["p"]), "m": int(arguments.get("m", 1)), "e": int(arguments.get("e", 3))}

    def _spec(self, arguments: Dict[str, Any]):
        field = self._field_args(arguments)
        if "r" not in arguments:
            raise ValueError("Missing r")
        return self.toolkit.build_spec(
            field["p"], field["m"], field["e"], int(arguments["r"]),
            arguments.get("a_exp"), arguments.get("a_coeffs"),
        )

    async def handle_field_info(self, arguments: Dict[str, Any]) -> List[types.TextContent]:
        """Handle field-info tool."""
        if not arguments:
            raise ValueError("Missing arguments")
        try:
            return _text(self.toolkit.field_info(**self._field_args(arguments)))
        except ToolkitError as e:
            return _error("building field", e)

    async def handle_test_binomial(self, arguments: Dict[str, Any]) -> List[types.TextContent]:
        """Handle test-binomial tool."""
        if not arguments:
            raise ValueError("Missing arguments")
        try:
            spec = self._spec(arguments)
            records = self.toolkit.test_binomial(spec, arguments.get("method", "all"))
            return _text({"verdicts": records, "unanimous": self.toolkit.unanimous(records)})
        except ToolkitError as e:
            return _error("testing binomial", e)

    async def handle_power_sum_certificate(self, arguments: Dict[str, Any]) -> List[types.TextContent]:
        """Handle power-sum-certificate tool."""
        if not arguments or "N" not in arguments:
            raise ValueError("Missing N")
        try:
            return _text(self.toolkit.certificate(self._spec(arguments), int(arguments["N"])))
        except ToolkitError as e:
            return _error("computing power sum", e)

    async def handle_hw_threshold(self, arguments: Dict[str, Any]) -> List[types.TextContent]:
        """Handle hw-threshold tool."""
        if not arguments or "q" not in arguments or "e" not in arguments:
            raise ValueError("Missing q or e")
        r_values = arguments.get("r_values") or ([arguments["r"]] if "r" in arguments else [])
        if not r_values:
            raise ValueError("Missing r or r_values")
        try:
            reports = self.toolkit.hw(int(arguments["q"]), int(arguments["e"]), [int(r) for r in r_values])
            return _text([report.to_record() for report in reports])
        except ToolkitError as e:
            return _error("evaluating threshold", e)

    async def handle_verify_claim(self, arguments: Dict[str, Any]) -> List[types.TextContent]:
        """Handle verify-claim tool; the report is saved under its claim and field name."""
        if not arguments or "claim" not in arguments:
            raise ValueError("Missing claim")
        try:
            field = self._field_args(arguments)
            report = self.toolkit.verify(
                arguments["claim"],
                samples=int(arguments.get("samples", 10)),
                seed=int(arguments.get("seed", 0)),
                **field,
            )
        except ToolkitError as e:
            return _error("verifying claim", e)

        record = report.to_record()
        name = f"{report.claim_id}-p{field['p']}-m{field['m']}-e{field['e']}"
        await self.report_store.save(name, [record])
        status = "✅ verified" if report.verified else "⚠️ disagreements found"
        return _text(f"{status}; saved as report://{name}\n\n{json.dumps(record, indent=2)}")
