"""
Controller type value object.
"""

from enum import Enum


class ControllerType(str, Enum):
    """Controller selection enumeration."""

    MGC = "mgc"
    AMGC = "amgc"
    BASELINE_PD = "baseline_pd"

    @property
    def display_name(self) -> str:
        """Get human-readable display name."""
        return {
            self.MGC: "Modular geometric control",
            self.AMGC: "Adaptive modular geometric control",
            self.BASELINE_PD: "Geometric PD baseline",
        }.get(self, self.value.upper())

    @property
    def is_adaptive(self) -> bool:
        """Check if the controller updates inertia estimates."""
        return self == self.AMGC

    @property
    def is_modular(self) -> bool:
        """Check if the controller is composed from per-body subsystems."""
        return self in [self.MGC, self.AMGC]
