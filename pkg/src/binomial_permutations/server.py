"""
MCP server for the binomial permutation toolkit.

This server exposes field construction, permutation tests, power-sum certificates,
Hasse-Weil reports and claim verification as tools, with stored verification
reports as resources.
"""

import asyncio

from mcp.server.models import InitializationOptions
import mcp.types as types
from mcp.server import NotificationOptions, Server
from pydantic import AnyUrl
import mcp.server.stdio

from .config import REPORTS_PATH
from .handlers.tool_handlers import ToolHandlers
from .handlers.resource_handlers import ResourceHandlers
from .utils.report_store import ReportStore

report_store = ReportStore(REPORTS_PATH)

server = Server("binomial-permutations")

# Initialize handlers
tool_handlers = ToolHandlers(report_store)
resource_handlers = ResourceHandlers(report_store)

_FIELD_PROPERTIES = {
    "p": {"type": "integer", "description": "Prime characteristic"},
    "m": {"type": "integer", "description": "q = p^m (default: 1)", "default": 1},
    "e": {"type": "integer", "description": "Extension count, field F_{q^e} (default: 3)", "default": 3},
}

_BINOMIAL_PROPERTIES = {
    **_FIELD_PROPERTIES,
    "r": {"type": "integer", "description": "Exponent r of x^r (x^(q-1) + a)"},
    "a_exp": {"type": "integer", "description": "a as an exponent of the canonical primitive element"},
    "a_coeffs": {
        "type": "array",
        "items": {"type": "integer"},
        "description": "a as a coefficient list, constant term first",
    },
}


@server.list_resources()
async def handle_list_resources() -> list[types.Resource]:
    """List stored verification reports."""
    return await resource_handlers.list_resources()


@server.read_resource()
async def handle_read_resource(uri: AnyUrl) -> str:
    """Read a specific resource's content by its URI."""
    return await resource_handlers.read_resource(uri)


@server.list_tools()
async def handle_list_tools() -> list[types.Tool]:
    """List available tools."""
    return [
        types.Tool(
            name="field-info",
            description="Build F_{q^e} and report its modulus, order, primitive element and the factorization of q^e - 1",
            inputSchema={
                "type": "object",
                "properties": _FIELD_PROPERTIES,
                "required": ["p"],
            },
        ),
        types.Tool(
            name="test-binomial",
            description="Decide whether x^r (x^(q-1) + a) permutes F_{q^e}, with a witness when it does not",
            inputSchema={
                "type": "object",
                "properties": {
                    **_BINOMIAL_PROPERTIES,
                    "method": {
                        "type": "string",
                        "description": "Test to run (default: all)",
                        "enum": ["brute", "hermite", "mu", "closed", "all"],
                        "default": "all",
                    },
                },
                "required": ["p", "r"],
            },
        ),
        types.Tool(
            name="power-sum-certificate",
            description="Evaluate the power sum of f(x)^N over the field by every available method",
            inputSchema={
                "type": "object",
                "properties": {
                    **_BINOMIAL_PROPERTIES,
                    "N": {"type": "integer", "description": "Power-sum exponent, 1 <= N <= q^e - 2"},
                },
                "required": ["p", "r", "N"],
            },
        ),
        types.Tool(
            name="hw-threshold",
            description="Exact Hasse-Weil non-permutation threshold for q, e and r",
            inputSchema={
                "type": "object",
                "properties": {
                    "q": {"type": "integer", "description": "Prime power q"},
                    "e": {"type": "integer", "description": "Extension count"},
                    "r": {"type": "integer", "description": "Single exponent"},
                    "r_values": {"type": "array", "items": {"type": "integer"}, "description": "Several exponents"},
                },
                "required": ["q", "e"],
            },
        ),
        types.Tool(
            name="verify-claim",
            description="Run a verification driver and store the report as a resource",
            inputSchema={
                "type": "object",
                "properties": {
                    **_FIELD_PROPERTIES,
                    "claim": {
                        "type": "string",
                        "enum": [
                            "lemma4", "prop1", "lemma5", "lemma6", "lemma5-6",
                            "theorem1", "remark-even", "r1-linearized", "conjecture",
                        ],
                    },
                    "samples": {"type": "integer", "description": "Sampled values of a (default: 10)", "default": 10},
                    "seed": {"type": "integer", "description": "Sampling seed (default: 0)", "default": 0},
                },
                "required": ["claim", "p"],
            },
        ),
    ]


@server.call_tool()
async def handle_call_tool(
    name: str, arguments: dict | None
) -> list[types.TextContent | types.ImageContent | types.EmbeddedResource]:
    """Handle all tool calls by delegating to appropriate handlers."""

    handler_map = {
        "field-info": tool_handlers.handle_field_info,
        "test-binomial": tool_handlers.handle_test_binomial,
        "power-sum-certificate": tool_handlers.handle_power_sum_certificate,
        "hw-threshold": tool_handlers.handle_hw_threshold,
        "verify-claim": tool_handlers.handle_verify_claim,
    }

    if name not in handler_map:
        raise ValueError(f"Unknown tool: {name}")

    return await handler_map[name](arguments or {})


async def main():
    """Run the server using stdin/stdout streams."""
    async with mcp.server.stdio.stdio_server() as (read_stream, write_stream):
        await server.run(
            read_stream,
            write_stream,
            InitializationOptions(
                server_name="binomial-permutations",
                server_version="0.1.0",
                capabilities=server.get_capabilities(
                    notification_options=NotificationOptions(),
                    experimental_capabilities={},
                ),
            ),
        )


if __name__ == "__main__":
    asyncio.run(main())
