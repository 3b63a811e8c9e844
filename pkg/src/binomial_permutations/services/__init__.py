"""
Services package for permutation tests, certificates and verification drivers.
"""

from .toolkit_service import ToolkitService
from .validation_service import ValidationService

__all__ = ['ToolkitService', 'ValidationService']
