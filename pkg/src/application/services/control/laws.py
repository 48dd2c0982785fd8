"""
Control laws of the modular geometric controller, body by body.

Each body i tracks a desired pose T_d through the configuration error
e = T_d^-1 T and its logarithm eta. The required velocity and acceleration
are what the body must follow for eta to decay at the rate set by Gamma; the
required wrench is what the body needs from its parent to follow them.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from src.application.services.inertia import regressor, spatial_matrix_from_pseudo
from src.application.services.kindyn import propagate_wrenches
from src.application.services.liegroup import (
    DEFAULT_BERNOULLI_ORDER,
    INJECTIVITY_TOLERANCE,
    ad,
    adjoint_inverse,
    bernoulli_operator,
    coad,
    log_se3,
)
from src.domain.entities.chain_model import ChainModel
from src.domain.entities.gain_set import GainSet
from src.domain.exceptions.numerical_error import InjectivityRadiusError
from src.domain.value_objects.pose import Pose
from src.domain.value_objects.spatial import Twist, Wrench

Matrix = npt.NDArray[np.float64]
Stack = npt.NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class BodyError:
    """Configuration error of one body."""

    e: Pose
    eta: Twist
    psi: float


def config_error(
    desired: Pose,
    actual: Pose,
    k_z: Matrix,
    tolerance: float = INJECTIVITY_TOLERANCE,
    body: Optional[int] = None,
) -> BodyError:
    """e = desired^-1 actual, eta = log(e) and psi = eta^T K_z eta / 2."""
    e = desired.inverse() @ actual
    try:
        eta = log_se3(e, tolerance)
    except InjectivityRadiusError as exc:
        raise InjectivityRadiusError(exc.trace, exc.tolerance, body=body) from exc
    return BodyError(e=e, eta=eta, psi=0.5 * float(eta @ k_z @ eta))


def velocity_error(e: Pose, v_desired: Twist, v_actual: Twist) -> Twist:
    """Desired velocity seen in the actual body frame minus the actual velocity."""
    return adjoint_inverse(e) @ v_desired - v_actual


def required_velocity(e: Pose, v_desired: Twist, eta: Twist, gamma: Matrix) -> Twist:
    """V_r = Ad(e^-1) V_d - Gamma eta."""
    return adjoint_inverse(e) @ v_desired - gamma @ eta


def required_acceleration(
    e: Pose,
    a_desired: Twist,
    v_desired: Twist,
    v_err: Twist,
    eta: Twist,
    gamma: Matrix,
    order: int = DEFAULT_BERNOULLI_ORDER,
) -> Twist:
    """Time derivative of required_velocity.

    A_r = Ad(e^-1) A_d + ad(V_e) Ad(e^-1) V_d + Gamma B(eta) V_e, using
    d/dt eta = -B(eta) V_e.
    """
    transport = adjoint_inverse(e)
    return (
        transport @ a_desired
        + ad(v_err) @ (transport @ v_desired)
        + gamma @ (bernoulli_operator(eta, order) @ v_err)
    )


def required_body_wrench(
    inertia: Matrix,
    k_v: Matrix,
    v_req: Twist,
    a_req: Twist,
    v_actual: Twist,
) -> Wrench:
    """Local part M A_r - coad(V, M V_r) + K_v (V_r - V) of a required wrench."""
    return (
        inertia @ a_req
        - coad(v_actual, inertia @ v_req)
        + k_v @ (v_req - v_actual)
    )


def _required_wrenches(
    inertias: Sequence[Matrix],
    k_v: Matrix,
    local: Sequence[Pose],
    v_req: Stack,
    a_req: Stack,
    v_actual: Stack,
    tip_wrench: Optional[Wrench],
) -> Stack:
    local_parts = np.array(
        [
            required_body_wrench(inertias[i], k_v, v_req[i], a_req[i], v_actual[i])
            for i in range(len(inertias))
        ]
    )
    return propagate_wrenches(local, local_parts, tip_wrench)


def required_wrench_mgc(
    model: ChainModel,
    gains: GainSet,
    local: Sequence[Pose],
    v_req: Stack,
    a_req: Stack,
    v_actual: Stack,
    tip_wrench: Optional[Wrench] = None,
) -> Stack:
    """Required wrenches of every body, propagated from the tip inward."""
    inertias = [body.inertia.matrix for body in model.bodies]
    return _required_wrenches(inertias, gains.k_v, local, v_req, a_req, v_actual, tip_wrench)


def required_wrench_amgc(
    estimates: Sequence[Matrix],
    gains: GainSet,
    local: Sequence[Pose],
    v_req: Stack,
    a_req: Stack,
    v_actual: Stack,
    tip_wrench: Optional[Wrench] = None,
) -> Tuple[Stack, Tuple[Matrix, ...]]:
    """Required wrenches from estimated pseudo-inertias, plus each body's regressor."""
    inertias = [spatial_matrix_from_pseudo(l_hat) for l_hat in estimates]
    wrenches = _required_wrenches(
        inertias, gains.k_v, local, v_req, a_req, v_actual, tip_wrench
    )
    regressors = tuple(
        regressor(v_req[i] - v_actual[i], v_req[i], a_req[i], v_actual[i])
        for i in range(len(estimates))
    )
    return wrenches, regressors


def required_joint_velocity(
    v_req: Twist, v_req_parent: Twist, local_transform: Pose, xi: Twist
) -> float:
    """Least-squares joint rate with xi * rate closest to V_r - Ad(T^-1) V_r_parent."""
    r = v_req - adjoint_inverse(local_transform) @ v_req_parent
    return float(xi @ r) / float(xi @ xi)


def kinematic_residual(
    v_req: Twist, v_req_parent: Twist, local_transform: Pose, xi: Twist, rate: float
) -> Twist:
    """Part of the required relative twist the joint cannot produce."""
    return v_req - adjoint_inverse(local_transform) @ v_req_parent - xi * rate


def required_joint_action(
    theta_ddot_req: npt.ArrayLike,
    theta_dot_req: npt.ArrayLike,
    theta_dot: npt.ArrayLike,
    rotor_inertia: npt.ArrayLike,
    k_a: npt.ArrayLike,
) -> npt.NDArray[np.float64]:
    """J_r = I_m theta_ddot_r + k_a (theta_dot_r - theta_dot), N m."""
    return np.asarray(rotor_inertia) * np.asarray(theta_ddot_req) + np.asarray(k_a) * (
        np.asarray(theta_dot_req) - np.asarray(theta_dot)
    )


def joint_command(xi: Twist, f_req: Wrench, joint_action: float) -> float:
    """tau_r = xi^T F_r + J_r."""
    return float(xi @ f_req) + float(joint_action)


def vpf(v_req: Twist, v_actual: Twist, f_req: Wrench, f_actual: Wrench) -> float:
    """Virtual power (V_r - V)^T (F_r - F) at a body interface, W."""
    return float((np.asarray(v_req) - v_actual) @ (np.asarray(f_req) - f_actual))


def lyapunov_body(v_req: Twist, v_actual: Twist, inertia: Matrix, psi: float) -> float:
    """Kinetic error energy of a body plus its configuration energy, J."""
    dv = np.asarray(v_req) - v_actual
    return 0.5 * float(dv @ inertia @ dv) + float(psi)


def lyapunov_joint(theta_dot_req: float, theta_dot: float, rotor_inertia: float) -> float:
    """Rotor error energy I_m (theta_dot_r - theta_dot)^2 / 2, J."""
    return 0.5 * float(rotor_inertia) * float(theta_dot_req - theta_dot) ** 2
