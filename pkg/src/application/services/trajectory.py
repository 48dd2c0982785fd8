"""
Desired joint trajectories.
"""

import math
from typing import Sequence, Tuple

import numpy as np
import numpy.typing as npt
from numpy.polynomial import Polynomial

from src.domain.entities.scenario import JointTrajectory
from src.domain.value_objects.trajectory_kind import TrajectoryKind

Vector = npt.NDArray[np.float64]


def evaluate_joint(trajectory: JointTrajectory, t: float) -> Tuple[float, float, float]:
    """Angle, rate and acceleration of one joint at time t."""
    if trajectory.kind == TrajectoryKind.SET_POINT:
        return trajectory.value, 0.0, 0.0

    if trajectory.kind == TrajectoryKind.POLYNOMIAL:
        position = Polynomial(trajectory.coefficients)
        velocity = position.deriv(1)
        acceleration = position.deriv(2)
        return float(position(t)), float(velocity(t)), float(acceleration(t))

    omega = 2.0 * math.pi * trajectory.frequency_hz
    angle = omega * t + trajectory.phase
    a = trajectory.amplitude
    return (
        trajectory.value + a * math.sin(angle),
        a * omega * math.cos(angle),
        -a * omega * omega * math.sin(angle),
    )


def evaluate(
    trajectories: Sequence[JointTrajectory], t: float
) -> Tuple[Vector, Vector, Vector]:
    """Desired (theta, theta_dot, theta_ddot) of the whole chain at time t."""
    values = np.array([evaluate_joint(trajectory, t) for trajectory in trajectories])
    return values[:, 0].copy(), values[:, 1].copy(), values[:, 2].copy()
