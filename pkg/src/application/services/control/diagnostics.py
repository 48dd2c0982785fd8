"""
Per-step diagnostics: virtual power flows and Lyapunov functions.

Write dV_i = V_r_i - V_i and dF_i = F_r_i - F_i. Each body exchanges
dV_i^T dF_i with its joint and dV_i'^T dF_(i+1) with its child, where dV_i'
is dV_i seen from the child frame. With a fixed base and matching tip
wrenches, the exchanges cancel along the chain except for the part of the
required twist the joints cannot produce; the defect below measures that
bookkeeping and is zero up to round-off.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt

from src.application.interfaces.controllers import ControlOutput, DesiredState
from src.application.services.control.laws import lyapunov_body, lyapunov_joint, vpf
from src.application.services.kindyn import (
    KinematicState,
    body_accelerations,
    forward_dynamics,
    mass_matrix,
    rne_wrenches,
)
from src.application.services.liegroup import adjoint_inverse
from src.domain.entities.chain_model import ChainModel
from src.domain.value_objects.pose import Pose
from src.domain.value_objects.spatial import Wrench

Vector = npt.NDArray[np.float64]
Stack = npt.NDArray[np.float64]


@dataclass(frozen=True)
class VpfRecord:
    """Virtual power bookkeeping of one control step, W."""

    body: Vector
    body_exchange: Vector
    joint_exchange: Vector
    consistency: float
    defect: float
    relative_defect: float

    @property
    def total(self) -> float:
        """Sum of the body virtual powers."""
        return float(self.body.sum())


def plant_wrenches(
    model: ChainModel, state: KinematicState, torque: Vector, tip_wrench: Wrench
) -> Stack:
    """Wrenches the plant bodies actually receive under torque."""
    theta_ddot = forward_dynamics(model, state.theta, state.theta_dot, torque, tip_wrench)
    accelerations = body_accelerations(
        model, state.theta, state.theta_dot, theta_ddot, model.base_acceleration
    )
    return rne_wrenches(model, state.theta, state.velocities, accelerations, tip_wrench)


def vpf_bookkeeping(
    model: ChainModel,
    local: Sequence[Pose],
    velocities: Stack,
    theta_dot: Vector,
    output: ControlOutput,
    wrenches: Stack,
) -> VpfRecord:
    """Body and joint power exchanges and the telescoping defect."""
    if not output.is_modular:
        raise ValueError("Virtual power bookkeeping needs per-body required signals")
    n = model.n
    dv = output.v_req - velocities
    df = output.f_req - wrenches

    body = np.array(
        [vpf(output.v_req[i], velocities[i], output.f_req[i], wrenches[i]) for i in range(n)]
    )
    body_exchange = body.copy()
    for i in range(n - 1):
        seen_by_child = adjoint_inverse(local[i + 1]) @ dv[i]
        body_exchange[i] -= float(seen_by_child @ df[i + 1])

    axes = np.array([b.screw_axis for b in model.bodies])
    rate_error = output.theta_dot_req - theta_dot
    joint_exchange = -rate_error * np.einsum("ij,ij->i", axes, df)
    consistency = float(np.einsum("ij,ij->", output.residual, df))

    defect = float(body_exchange.sum() + joint_exchange.sum() - consistency)
    scale = float(
        np.abs(body_exchange).sum() + np.abs(joint_exchange).sum() + abs(consistency)
    )
    relative = abs(defect) / scale if scale > 0.0 else 0.0
    return VpfRecord(
        body=body,
        body_exchange=body_exchange,
        joint_exchange=joint_exchange,
        consistency=consistency,
        defect=defect,
        relative_defect=relative,
    )


def total_lyapunov(
    model: ChainModel,
    state: KinematicState,
    desired: DesiredState,
    output: ControlOutput,
) -> float:
    """Total Lyapunov function of the closed loop, J.

    Modular controllers: sum of body and rotor error energies with the plant
    inertias. Baseline: end-effector spring energy plus joint-space kinetic
    energy of the rate error.
    """
    if output.is_modular:
        bodies = sum(
            lyapunov_body(
                output.v_req[i],
                state.velocities[i],
                body.inertia.matrix,
                output.psi[i],
            )
            for i, body in enumerate(model.bodies)
        )
        joints = sum(
            lyapunov_joint(output.theta_dot_req[i], state.theta_dot[i], body.rotor_inertia)
            for i, body in enumerate(model.bodies)
        )
        return float(bodies + joints)

    rate_error = state.theta_dot - desired.theta_dot
    kinetic = 0.5 * float(rate_error @ mass_matrix(model, state.theta) @ rate_error)
    return output.end_effector_psi + kinetic
