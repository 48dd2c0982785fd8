"""Scenario domain entities."""

from dataclasses import dataclass, field, replace
from typing import Any, Tuple

import numpy as np
import numpy.typing as npt

from src.domain.entities.chain_model import ChainModel
from src.domain.entities.gain_set import GainSet
from src.domain.exceptions.validation_error import InvalidFieldError
from src.domain.value_objects.controller_type import ControllerType
from src.domain.value_objects.trajectory_kind import TrajectoryKind

MAX_PERTURBATION = 0.5


@dataclass(frozen=True)
class JointTrajectory:
    """Desired motion of one joint.

    set_point: theta = value. polynomial: theta = sum(coefficients[k] * t**k).
    sinusoid: theta = value + amplitude * sin(2 pi frequency_hz t + phase).
    """

    kind: TrajectoryKind = TrajectoryKind.SET_POINT
    value: float = 0.0
    coefficients: Tuple[float, ...] = ()
    amplitude: float = 0.0
    frequency_hz: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        """Validate trajectory data."""
        if self.kind == TrajectoryKind.POLYNOMIAL and not self.coefficients:
            raise InvalidFieldError("coefficients", "polynomial needs at least one coefficient")
        if self.kind == TrajectoryKind.SINUSOID and self.frequency_hz < 0.0:
            raise InvalidFieldError("frequency_hz", "must be non-negative")
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))

    @classmethod
    def set_point(cls, value: float) -> "JointTrajectory":
        """Constant joint angle."""
        return cls(kind=TrajectoryKind.SET_POINT, value=float(value))


@dataclass(frozen=True, eq=False)
class Scenario:
    """One closed-loop experiment: trajectory, initial state, timing and controller."""

    name: str
    model: str
    controller: ControllerType
    trajectories: Tuple[JointTrajectory, ...]
    initial_theta: npt.NDArray[np.float64]
    initial_theta_dot: npt.NDArray[np.float64]
    duration: float = 10.0
    control_rate: float = 1000.0
    substeps: int = 1
    perturbation: float = 0.0
    seed: int = 0
    bernoulli_order: int = 8
    filter_cutoff_hz: float = 100.0
    injectivity_margin: float = 0.01
    tip_wrench: npt.NDArray[np.float64] = field(default_factory=lambda: np.zeros(6))

    def __post_init__(self):
        """Validate scenario data."""
        theta = np.array(self.initial_theta, dtype=float).reshape(-1)
        theta_dot = np.array(self.initial_theta_dot, dtype=float).reshape(-1)
        tip = np.array(self.tip_wrench, dtype=float).reshape(-1)
        trajectories = tuple(self.trajectories)

        if not self.duration > 0.0:
            raise InvalidFieldError("scenario.duration", f"must be positive, got {self.duration}")
        if not self.control_rate > 0.0:
            raise InvalidFieldError(
                "scenario.control_rate", f"must be positive, got {self.control_rate}"
            )
        if self.substeps < 1:
            raise InvalidFieldError("scenario.substeps", f"must be >= 1, got {self.substeps}")
        if not 0.0 <= self.perturbation <= MAX_PERTURBATION:
            raise InvalidFieldError(
                "scenario.perturbation",
                f"must be in [0, {MAX_PERTURBATION}], got {self.perturbation}",
            )
        if self.bernoulli_order < 2:
            raise InvalidFieldError(
                "scenario.bernoulli_order", f"must be >= 2, got {self.bernoulli_order}"
            )
        if not self.filter_cutoff_hz > 0.0:
            raise InvalidFieldError("scenario.filter_cutoff_hz", "must be positive")
        if not 0.0 <= self.injectivity_margin < 2.0:
            raise InvalidFieldError("scenario.injectivity_margin", "must be in [0, 2)")
        if theta.shape != (len(trajectories),) or theta_dot.shape != theta.shape:
            raise InvalidFieldError(
                "scenario.initial_state",
                f"expected {len(trajectories)} joint values for theta and theta_dot",
            )
        if tip.shape != (6,):
            raise InvalidFieldError("scenario.tip_wrench", "must have 6 entries")

        for array in (theta, theta_dot, tip):
            array.setflags(write=False)
        object.__setattr__(self, "trajectories", trajectories)
        object.__setattr__(self, "initial_theta", theta)
        object.__setattr__(self, "initial_theta_dot", theta_dot)
        object.__setattr__(self, "tip_wrench", tip)

    @property
    def dt(self) -> float:
        """Control period, seconds."""
        return 1.0 / self.control_rate

    @property
    def steps(self) -> int:
        """Number of control periods in the run."""
        return int(round(self.duration * self.control_rate))

    def updated(self, **changes: Any) -> "Scenario":
        """Copy with the given fields replaced."""
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class Experiment:
    """A loaded configuration document: chain, gains and scenario."""

    model: ChainModel
    gains: GainSet
    scenario: Scenario

    def __post_init__(self):
        """Check that all parts are sized for the same chain."""
        n = self.model.n
        if self.gains.n != n:
            raise InvalidFieldError("gains", f"sized for {self.gains.n} bodies, chain has {n}")
        if len(self.scenario.trajectories) != n:
            raise InvalidFieldError(
                "scenario.trajectory",
                f"expected {n} joint trajectories, got {len(self.scenario.trajectories)}",
            )

    def updated(self, **changes: Any) -> "Experiment":
        """Copy with the given parts replaced."""
        return replace(self, **changes)
