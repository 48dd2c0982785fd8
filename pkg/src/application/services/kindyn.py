"""
Recursive kinematics and dynamics of serial chains.

Body i moves relative to body i-1 by T(i-1, i) = home_i exp(xi_i theta_i).
Velocities and accelerations propagate outward from the base; wrenches
propagate back inward. Gravity enters as a base acceleration of -g.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
import numpy.typing as npt
from scipy import linalg

from src.application.services.liegroup import ad, adjoint_inverse, coad, exp_se3
from src.domain.entities.body_module import BodyModule
from src.domain.entities.chain_model import ChainModel
from src.domain.exceptions.numerical_error import SingularMassMatrixError
from src.domain.value_objects.pose import Pose
from src.domain.value_objects.spatial import Twist, Wrench

Vector = npt.NDArray[np.float64]
Stack = npt.NDArray[np.float64]


@dataclass
class KinematicState:
    """Joint state and the body quantities derived from it."""

    theta: Vector
    theta_dot: Vector
    local: List[Pose]
    poses: List[Pose]
    velocities: Stack
    accelerations: Optional[Stack] = None

    @property
    def end_effector(self) -> Pose:
        """Pose of the last body in the base frame."""
        return self.poses[-1]


def fk_local(body: BodyModule, theta: float) -> Pose:
    """Transform of a body relative to its parent."""
    return body.home @ exp_se3(body.screw_axis * float(theta))


def local_transforms(model: ChainModel, theta: npt.ArrayLike) -> List[Pose]:
    """T(i-1, i) for every body."""
    theta = np.asarray(theta, dtype=float)
    return [fk_local(body, theta[i]) for i, body in enumerate(model.bodies)]


def _cumulative(local: Sequence[Pose]) -> List[Pose]:
    poses = []
    current = Pose.identity()
    for transform in local:
        current = current @ transform
        poses.append(current)
    return poses


def fk_chain(model: ChainModel, theta: npt.ArrayLike) -> List[Pose]:
    """Base-frame pose of every body."""
    return _cumulative(local_transforms(model, theta))


def _velocities(
    model: ChainModel, local: Sequence[Pose], theta_dot: Vector, base_twist: Twist
) -> Stack:
    velocities = np.zeros((model.n, 6))
    previous = base_twist
    for i, body in enumerate(model.bodies):
        previous = adjoint_inverse(local[i]) @ previous + body.screw_axis * theta_dot[i]
        velocities[i] = previous
    return velocities


def _accelerations(
    model: ChainModel,
    local: Sequence[Pose],
    theta_dot: Vector,
    theta_ddot: Vector,
    base_twist: Twist,
    base_accel: Twist,
) -> Stack:
    accelerations = np.zeros((model.n, 6))
    v_prev, a_prev = base_twist, base_accel
    for i, body in enumerate(model.bodies):
        transport = adjoint_inverse(local[i])
        v_moved = transport @ v_prev
        joint_rate = body.screw_axis * theta_dot[i]
        a_prev = transport @ a_prev + ad(v_moved) @ joint_rate + body.screw_axis * theta_ddot[i]
        v_prev = v_moved + joint_rate
        accelerations[i] = a_prev
    return accelerations


def body_velocities(
    model: ChainModel,
    theta: npt.ArrayLike,
    theta_dot: npt.ArrayLike,
    base_twist: Optional[Twist] = None,
) -> Stack:
    """Body-frame twist of every body, one row per body."""
    base = np.zeros(6) if base_twist is None else np.asarray(base_twist, dtype=float)
    return _velocities(
        model, local_transforms(model, theta), np.asarray(theta_dot, dtype=float), base
    )


def body_accelerations(
    model: ChainModel,
    theta: npt.ArrayLike,
    theta_dot: npt.ArrayLike,
    theta_ddot: npt.ArrayLike,
    base_accel: Optional[Twist] = None,
    base_twist: Optional[Twist] = None,
) -> Stack:
    """Body-frame acceleration of every body, the time derivative of body_velocities.

    Pass model.base_acceleration as base_accel to include gravity.
    """
    return _accelerations(
        model,
        local_transforms(model, theta),
        np.asarray(theta_dot, dtype=float),
        np.asarray(theta_ddot, dtype=float),
        np.zeros(6) if base_twist is None else np.asarray(base_twist, dtype=float),
        np.zeros(6) if base_accel is None else np.asarray(base_accel, dtype=float),
    )


def forward_kinematics(
    model: ChainModel,
    theta: npt.ArrayLike,
    theta_dot: npt.ArrayLike,
    theta_ddot: Optional[npt.ArrayLike] = None,
    gravity: bool = True,
) -> KinematicState:
    """Poses, velocities and (optionally) accelerations in one pass."""
    theta = np.asarray(theta, dtype=float)
    theta_dot = np.asarray(theta_dot, dtype=float)
    local = local_transforms(model, theta)
    state = KinematicState(
        theta=theta,
        theta_dot=theta_dot,
        local=local,
        poses=_cumulative(local),
        velocities=_velocities(model, local, theta_dot, np.zeros(6)),
    )
    if theta_ddot is not None:
        base_accel = model.base_acceleration if gravity else np.zeros(6)
        state.accelerations = _accelerations(
            model,
            local,
            theta_dot,
            np.asarray(theta_ddot, dtype=float),
            np.zeros(6),
            base_accel,
        )
    return state


def propagate_wrenches(
    local: Sequence[Pose], body_wrenches: Stack, tip_wrench: Optional[Wrench] = None
) -> Stack:
    """Backward pass F_i = f_i + Ad(T(i, i+1)^-1)^T F_(i+1) starting from the tip."""
    n = len(body_wrenches)
    wrenches = np.zeros((n, 6))
    following = np.zeros(6) if tip_wrench is None else np.asarray(tip_wrench, dtype=float)
    for i in range(n - 1, -1, -1):
        if i + 1 < n:
            following = adjoint_inverse(local[i + 1]).T @ following
        following = body_wrenches[i] + following
        wrenches[i] = following
    return wrenches


def newton_euler(spatial_inertia: npt.NDArray[np.float64], twist: Twist, accel: Twist) -> Wrench:
    """Net wrench M A - coad(V, M V) of one rigid body."""
    return spatial_inertia @ accel - coad(twist, spatial_inertia @ twist)


def rne_wrenches(
    model: ChainModel,
    theta: npt.ArrayLike,
    velocities: Stack,
    accelerations: Stack,
    tip_wrench: Optional[Wrench] = None,
) -> Stack:
    """Wrench each body receives from its parent, one row per body.

    tip_wrench is the wrench the last body exerts on its environment,
    expressed in the last body frame.
    """
    local = local_transforms(model, theta)
    return _rne(model, local, np.asarray(velocities), np.asarray(accelerations), tip_wrench)


def _rne(
    model: ChainModel,
    local: Sequence[Pose],
    velocities: Stack,
    accelerations: Stack,
    tip_wrench: Optional[Wrench],
) -> Stack:
    net = np.array(
        [
            newton_euler(body.inertia.matrix, velocities[i], accelerations[i])
            for i, body in enumerate(model.bodies)
        ]
    )
    return propagate_wrenches(local, net, tip_wrench)


def joint_torques(model: ChainModel, wrenches: Stack, theta_ddot: npt.ArrayLike) -> Vector:
    """Actuator torques xi^T F + I_m theta_ddot."""
    axes = np.array([body.screw_axis for body in model.bodies])
    return np.einsum("ij,ij->i", axes, wrenches) + model.rotor_inertias * np.asarray(
        theta_ddot, dtype=float
    )


def _inverse_dynamics(
    model: ChainModel,
    local: Sequence[Pose],
    theta_dot: Vector,
    theta_ddot: Vector,
    base_accel: Twist,
    tip_wrench: Optional[Wrench],
) -> Vector:
    velocities = _velocities(model, local, theta_dot, np.zeros(6))
    accelerations = _accelerations(
        model, local, theta_dot, theta_ddot, np.zeros(6), base_accel
    )
    wrenches = _rne(model, local, velocities, accelerations, tip_wrench)
    return joint_torques(model, wrenches, theta_ddot)


def inverse_dynamics(
    model: ChainModel,
    theta: npt.ArrayLike,
    theta_dot: npt.ArrayLike,
    theta_ddot: npt.ArrayLike,
    tip_wrench: Optional[Wrench] = None,
    gravity: bool = True,
) -> Vector:
    """Joint torques that produce theta_ddot from the given state."""
    return _inverse_dynamics(
        model,
        local_transforms(model, theta),
        np.asarray(theta_dot, dtype=float),
        np.asarray(theta_ddot, dtype=float),
        model.base_acceleration if gravity else np.zeros(6),
        tip_wrench,
    )


def _mass_matrix(model: ChainModel, local: Sequence[Pose]) -> npt.NDArray[np.float64]:
    n = model.n
    zeros = np.zeros(n)
    columns = [
        _inverse_dynamics(model, local, zeros, unit, np.zeros(6), None)
        for unit in np.eye(n)
    ]
    return np.column_stack(columns)


def mass_matrix(model: ChainModel, theta: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Joint-space inertia, one inverse-dynamics call per column."""
    return _mass_matrix(model, local_transforms(model, theta))


def gravity_torques(model: ChainModel, theta: npt.ArrayLike) -> Vector:
    """Torques that hold the chain still against gravity."""
    zeros = np.zeros(model.n)
    return inverse_dynamics(model, theta, zeros, zeros)


def forward_dynamics(
    model: ChainModel,
    theta: npt.ArrayLike,
    theta_dot: npt.ArrayLike,
    tau: npt.ArrayLike,
    tip_wrench: Optional[Wrench] = None,
) -> Vector:
    """Joint accelerations under torques tau, solving M(theta) theta_ddot = tau - bias."""
    local = local_transforms(model, theta)
    theta_dot = np.asarray(theta_dot, dtype=float)
    bias = _inverse_dynamics(
        model, local, theta_dot, np.zeros(model.n), model.base_acceleration, tip_wrench
    )
    m = _mass_matrix(model, local)
    try:
        factor = linalg.cho_factor(0.5 * (m + m.T))
    except linalg.LinAlgError as exc:
        raise SingularMassMatrixError(str(exc)) from exc
    return linalg.cho_solve(factor, np.asarray(tau, dtype=float) - bias)


def body_jacobian(model: ChainModel, theta: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """6 x n map from joint rates to the last body's twist, in the last body frame."""
    local = local_transforms(model, theta)
    n = model.n
    jacobian = np.zeros((6, n))
    relative = Pose.identity()
    for k in range(n - 1, -1, -1):
        jacobian[:, k] = adjoint_inverse(relative) @ model.bodies[k].screw_axis
        relative = local[k] @ relative
    return jacobian


def kinetic_energy(
    model: ChainModel, theta: npt.ArrayLike, theta_dot: npt.ArrayLike
) -> float:
    """Link plus rotor kinetic energy, J."""
    theta_dot = np.asarray(theta_dot, dtype=float)
    velocities = body_velocities(model, theta, theta_dot)
    links = sum(
        0.5 * float(v @ body.inertia.matrix @ v)
        for v, body in zip(velocities, model.bodies)
    )
    return links + 0.5 * float(np.sum(model.rotor_inertias * theta_dot**2))


def potential_energy(model: ChainModel, theta: npt.ArrayLike) -> float:
    """Gravitational potential energy relative to the base origin, J."""
    weighted = np.zeros(3)
    for pose, body in zip(fk_chain(model, theta), model.bodies):
        weighted += body.mass * pose.translation + pose.rotation @ body.inertia.first_moment
    return -float(model.gravity @ weighted)


def total_energy(model: ChainModel, theta: npt.ArrayLike, theta_dot: npt.ArrayLike) -> float:
    """Kinetic plus potential energy, J."""
    return kinetic_energy(model, theta, theta_dot) + potential_energy(model, theta)
