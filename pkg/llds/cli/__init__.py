"""
llds command line interface.
"""

from llds.cli.main import cli

__all__ = ["cli"]
