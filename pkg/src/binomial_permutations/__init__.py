import sys

from . import cli


def main():
    """Main entry point for the package."""
    sys.exit(cli.main())

# Optionally expose other important items at package level
__all__ = ['main', 'cli']
