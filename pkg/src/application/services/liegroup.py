"""
Coordinate-free SE(3) and so(3) primitives.

Twists are ordered (angular, linear) and every 6x6 operator uses the matching
block layout:

    adjoint(T) = [[R, 0], [p^ R, R]]        ad(x) = [[w^, 0], [v^, w^]]

The co-adjoint is fixed by the pairing <coad(x, f), y> = <f, bracket(x, y)>,
so coad(x, f) = ad(x)^T f.
"""

import math
from functools import lru_cache
from typing import Tuple

import numpy as np
import numpy.typing as npt
from scipy.special import bernoulli

from src.domain.exceptions.numerical_error import (
    DivergenceRiskError,
    InjectivityRadiusError,
    MalformedElementError,
)
from src.domain.value_objects.pose import Pose
from src.domain.value_objects.spatial import Twist, Wrench

HAT_TOLERANCE = 1e-9
INJECTIVITY_TOLERANCE = 1e-9
SMALL_ANGLE = 1e-3
NEAR_PI_COSINE = -0.999
DEFAULT_BERNOULLI_ORDER = 8

Matrix = npt.NDArray[np.float64]


def hat3(w: npt.ArrayLike) -> Matrix:
    """Skew-symmetric matrix with hat3(w) @ u == cross(w, u)."""
    x, y, z = np.asarray(w, dtype=float)
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def vee3(m: npt.ArrayLike, tolerance: float = HAT_TOLERANCE) -> npt.NDArray[np.float64]:
    """Inverse of hat3; rejects matrices that are not antisymmetric."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise ValueError(f"so(3) element must be 3x3, got {m.shape}")
    deviation = float(np.abs(m + m.T).max())
    if deviation > tolerance:
        raise MalformedElementError("so(3)", deviation, tolerance)
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def hat6(x: Twist) -> Matrix:
    """4x4 se(3) form of a twist."""
    x = np.asarray(x, dtype=float)
    m = np.zeros((4, 4))
    m[:3, :3] = hat3(x[:3])
    m[:3, 3] = x[3:]
    return m


def vee6(m: npt.ArrayLike, tolerance: float = HAT_TOLERANCE) -> Twist:
    """Inverse of hat6; rejects a nonzero last row or a non-antisymmetric block."""
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise ValueError(f"se(3) element must be 4x4, got {m.shape}")
    last_row = float(np.abs(m[3]).max())
    if last_row > tolerance:
        raise MalformedElementError("se(3)", last_row, tolerance)
    return np.concatenate([vee3(m[:3, :3], tolerance), m[:3, 3]])


def _rodrigues_coefficients(theta: float) -> Tuple[float, float, float]:
    """Return sin(t)/t, (1 - cos t)/t^2 and (t - sin t)/t^3."""
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        t4 = t2 * t2
        return (
            1.0 - t2 / 6.0 + t4 / 120.0,
            0.5 - t2 / 24.0 + t4 / 720.0,
            1.0 / 6.0 - t2 / 120.0 + t4 / 5040.0,
        )
    s, c = math.sin(theta), math.cos(theta)
    t2 = theta * theta
    return s / theta, (1.0 - c) / t2, (theta - s) / (t2 * theta)


def exp_so3(w: npt.ArrayLike) -> Matrix:
    """Rodrigues formula."""
    w = np.asarray(w, dtype=float)
    a, b, _ = _rodrigues_coefficients(float(np.linalg.norm(w)))
    k = hat3(w)
    return np.eye(3) + a * k + b * (k @ k)


def rotation_angle(rotation: npt.ArrayLike) -> float:
    """Angle of a rotation, robust at both ends of [0, pi]."""
    r = np.asarray(rotation, dtype=float)
    axis_sin = 0.5 * np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    return math.atan2(float(np.linalg.norm(axis_sin)), 0.5 * (np.trace(r) - 1.0))


def log_so3(
    rotation: npt.ArrayLike, tolerance: float = INJECTIVITY_TOLERANCE
) -> npt.NDArray[np.float64]:
    """Rotation vector of R; requires trace(R) > -1 + tolerance."""
    r = np.asarray(rotation, dtype=float)
    trace = float(np.trace(r))
    if trace <= -1.0 + tolerance:
        raise InjectivityRadiusError(trace, tolerance)

    axis_sin = 0.5 * np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    s = float(np.linalg.norm(axis_sin))
    c = 0.5 * (trace - 1.0)
    theta = math.atan2(s, c)

    if theta < SMALL_ANGLE:
        t2 = theta * theta
        return axis_sin * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0)

    if c < NEAR_PI_COSINE:
        # symmetric part is (1 - c) a a^T; pivot on its largest diagonal entry
        b = 0.5 * (r + r.T) - c * np.eye(3)
        k = int(np.argmax(np.diag(b)))
        axis = b[:, k] / math.sqrt(b[k, k] * (1.0 - c))
        if axis @ axis_sin < 0.0:
            axis = -axis
        return theta * axis

    return (theta / s) * axis_sin


def exp_se3(x: Twist) -> Pose:
    """Group exponential; translation through the left Jacobian of SO(3)."""
    x = np.asarray(x, dtype=float)
    w, v = x[:3], x[3:]
    a, b, c = _rodrigues_coefficients(float(np.linalg.norm(w)))
    k = hat3(w)
    k2 = k @ k
    rotation = np.eye(3) + a * k + b * k2
    jacobian = np.eye(3) + b * k + c * k2
    return Pose(rotation, jacobian @ v)


def log_se3(pose: Pose, tolerance: float = INJECTIVITY_TOLERANCE) -> Twist:
    """Group logarithm, inverse of exp_se3 inside the injectivity region."""
    w = log_so3(pose.rotation, tolerance)
    theta = float(np.linalg.norm(w))
    k = hat3(w)
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        coefficient = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0
    else:
        half = 0.5 * theta
        coefficient = (1.0 - half / math.tan(half)) / (theta * theta)
    jacobian_inv = np.eye(3) - 0.5 * k + coefficient * (k @ k)
    return np.concatenate([w, jacobian_inv @ pose.translation])


def adjoint(pose: Pose) -> Matrix:
    """Adjoint map of a pose acting on twists."""
    r, p = pose.rotation, pose.translation
    m = np.zeros((6, 6))
    m[:3, :3] = r
    m[3:, :3] = hat3(p) @ r
    m[3:, 3:] = r
    return m


def adjoint_inverse(pose: Pose) -> Matrix:
    """adjoint(pose.inverse()) without forming the inverse pose."""
    rt = pose.rotation.T
    m = np.zeros((6, 6))
    m[:3, :3] = rt
    m[3:, :3] = -rt @ hat3(pose.translation)
    m[3:, 3:] = rt
    return m


def ad(x: Twist) -> Matrix:
    """Matrix of the Lie bracket y -> [x, y]."""
    w = hat3(x[:3])
    m = np.zeros((6, 6))
    m[:3, :3] = w
    m[3:, :3] = hat3(x[3:6])
    m[3:, 3:] = w
    return m


def bracket(x: Twist, y: Twist) -> Twist:
    """Lie bracket [x, y], equal to the commutator of the hat6 forms."""
    return ad(x) @ np.asarray(y, dtype=float)


def coad(x: Twist, f: Wrench) -> Wrench:
    """Co-adjoint action ad(x)^T f."""
    return ad(x).T @ np.asarray(f, dtype=float)


@lru_cache(maxsize=32)
def _bernoulli_coefficients(order: int) -> Tuple[float, ...]:
    """Series coefficients (-1)^n B_n / n! with B_1 = -1/2."""
    numbers = bernoulli(order)
    return tuple(
        float((-1.0) ** n * numbers[n] / math.factorial(n)) for n in range(order + 1)
    )


def bernoulli_operator(eta: Twist, order: int = DEFAULT_BERNOULLI_ORDER) -> Matrix:
    """Truncated series sum_n (-1)^n B_n / n! ad(eta)^n.

    Maps the body-frame velocity xi of e (de/dt = e xi^) to the rate of
    eta = log(e). Converges for rotation angles below 2*pi.
    """
    if order < 2:
        raise ValueError(f"Bernoulli series order must be at least 2, got {order}")
    eta = np.asarray(eta, dtype=float)
    angle = float(np.linalg.norm(eta[:3]))
    if angle >= 2.0 * math.pi:
        raise DivergenceRiskError(angle)

    coefficients = _bernoulli_coefficients(order)
    ad_eta = ad(eta)
    result = np.eye(6)
    power = np.eye(6)
    for n in range(1, order + 1):
        power = power @ ad_eta
        if coefficients[n] != 0.0:
            result = result + coefficients[n] * power
    return result
