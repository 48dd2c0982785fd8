"""
Desired joint trajectory kind value object.
"""

from enum import Enum


class TrajectoryKind(str, Enum):
    """Per-joint desired trajectory enumeration."""

    SET_POINT = "set_point"
    POLYNOMIAL = "polynomial"
    SINUSOID = "sinusoid"

    def is_stationary(self) -> bool:
        """Check if the desired joint angle is constant in time."""
        return self == self.SET_POINT
