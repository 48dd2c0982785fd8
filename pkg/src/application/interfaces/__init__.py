"""
Application interfaces package.
"""

from .controllers import ControllerInterface, ControlOutput, DesiredState

__all__ = [
    "ControllerInterface",
    "ControlOutput",
    "DesiredState",
]
