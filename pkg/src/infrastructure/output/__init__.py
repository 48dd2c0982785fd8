"""
Run artifact writers.
"""

from .trace_writer import to_frame, write_comparison, write_run

__all__ = ["to_frame", "write_comparison", "write_run"]
