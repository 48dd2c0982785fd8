"""
Fixed-step integration of the plant under zero-order-hold torque.
"""

from typing import Callable, Tuple

import numpy as np
import numpy.typing as npt

Vector = npt.NDArray[np.float64]
Acceleration = Callable[[Vector, Vector], Vector]


def rk4_step(
    theta: Vector, theta_dot: Vector, accel: Acceleration, h: float
) -> Tuple[Vector, Vector]:
    """One classical Runge-Kutta step of (theta, theta_dot)' = (theta_dot, accel)."""
    k1_q, k1_v = theta_dot, accel(theta, theta_dot)
    k2_q = theta_dot + 0.5 * h * k1_v
    k2_v = accel(theta + 0.5 * h * k1_q, k2_q)
    k3_q = theta_dot + 0.5 * h * k2_v
    k3_v = accel(theta + 0.5 * h * k2_q, k3_q)
    k4_q = theta_dot + h * k3_v
    k4_v = accel(theta + h * k3_q, k4_q)
    theta_next = theta + (h / 6.0) * (k1_q + 2.0 * k2_q + 2.0 * k3_q + k4_q)
    theta_dot_next = theta_dot + (h / 6.0) * (k1_v + 2.0 * k2_v + 2.0 * k3_v + k4_v)
    return theta_next, theta_dot_next


def integrate_hold(
    theta: Vector, theta_dot: Vector, accel: Acceleration, dt: float, substeps: int
) -> Tuple[Vector, Vector]:
    """Advance one control period of length dt with substeps equal RK4 steps."""
    h = dt / substeps
    for _ in range(substeps):
        theta, theta_dot = rk4_step(theta, theta_dot, accel, h)
    return theta, theta_dot


def is_finite_state(theta: Vector, theta_dot: Vector) -> bool:
    """Check that a joint state holds no NaN or Inf."""
    return bool(np.all(np.isfinite(theta)) and np.all(np.isfinite(theta_dot)))
