"""
Command-line interface package.
"""

from .app import build_parser, main

__all__ = ["build_parser", "main"]
