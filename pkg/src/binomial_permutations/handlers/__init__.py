"""
Handlers package for MCP tool and resource handling.
"""

from .tool_handlers import ToolHandlers
from .resource_handlers import ResourceHandlers

__all__ = ['ToolHandlers', 'ResourceHandlers']
