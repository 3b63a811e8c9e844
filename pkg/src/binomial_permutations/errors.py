"""
Exception hierarchy for the toolkit.

Each error carries the CLI exit status it maps to.
"""


class ToolkitError(Exception):
    """Base class for every error raised by the toolkit."""

    exit_code = 1


class InputError(ToolkitError, ValueError):
    """Malformed or inconsistent parameters."""

    exit_code = 2


class DigitOverflowError(InputError):
    """A requested digit width is too small for the number."""


class ReducibleModulusError(InputError):
    """A supplied field modulus is not irreducible."""


class RangeCapError(ToolkitError, ValueError):
    """A size cap or the 128-bit integer cap was exceeded."""

    exit_code = 3


class FieldZeroDivisionError(ToolkitError, ZeroDivisionError):
    """Inversion or discrete logarithm of the zero element."""

    exit_code = 2


class ConsistencyError(ToolkitError):
    """Independent methods produced different answers."""

    exit_code = 1
