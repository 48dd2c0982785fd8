"""
Controller interfaces for dependency inversion.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt

from src.application.services.kindyn import KinematicState
from src.domain.entities.chain_model import ChainModel
from src.domain.value_objects.controller_type import ControllerType

Vector = npt.NDArray[np.float64]
Stack = npt.NDArray[np.float64]


@dataclass
class DesiredState:
    """Desired joint motion at one control instant."""

    theta: Vector
    theta_dot: Vector
    theta_ddot: Vector


@dataclass
class ControlOutput:
    """Command torque and the intermediate signals behind it.

    The required-state fields are None for controllers that are not built
    from per-body subsystems.
    """

    torque: Vector
    eta: Stack
    psi: Vector
    velocity_error: Stack
    end_effector_psi: float
    v_req: Optional[Stack] = None
    a_req: Optional[Stack] = None
    f_req: Optional[Stack] = None
    theta_dot_req: Optional[Vector] = None
    theta_ddot_req: Optional[Vector] = None
    residual: Optional[Stack] = None
    regressors: Tuple[npt.NDArray[np.float64], ...] = field(default_factory=tuple)

    @property
    def is_modular(self) -> bool:
        """Check if the output carries per-body required signals."""
        return self.v_req is not None


class ControllerInterface(ABC):
    """Base interface for all joint-torque controllers."""

    @property
    @abstractmethod
    def controller_type(self) -> ControllerType:
        """Controller type."""
        pass

    @property
    @abstractmethod
    def model(self) -> ChainModel:
        """Chain model the controller believes in."""
        pass

    @property
    @abstractmethod
    def estimates(self) -> Tuple[npt.NDArray[np.float64], ...]:
        """Pseudo-inertias currently used for each body."""
        pass

    @abstractmethod
    def compute(
        self, t: float, state: KinematicState, desired: DesiredState
    ) -> ControlOutput:
        """Compute the command torque for the current state."""
        pass

    def update(self, output: ControlOutput, dt: float) -> None:
        """Advance internal estimates after a control period (no-op by default)."""
        return None

    @property
    def name(self) -> str:
        """Controller name."""
        return self.controller_type.value
