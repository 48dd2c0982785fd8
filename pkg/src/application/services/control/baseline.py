"""
Geometric PD baseline.

A simplified end-effector impedance law used for comparison: a spring on the
configuration error of the last body, a damper on its velocity error, and
model-based gravity compensation. It is not composed from per-body subsystems.
"""

from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt

from src.application.interfaces.controllers import (
    ControlOutput,
    ControllerInterface,
    DesiredState,
)
from src.application.services.control.laws import BodyError, config_error, velocity_error
from src.application.services.inertia import to_pseudo
from src.application.services.kindyn import (
    KinematicState,
    body_jacobian,
    forward_kinematics,
    gravity_torques,
)
from src.application.services.liegroup import (
    DEFAULT_BERNOULLI_ORDER,
    INJECTIVITY_TOLERANCE,
    bernoulli_operator,
)
from src.domain.entities.chain_model import ChainModel
from src.domain.entities.gain_set import BaselineGains, GainSet
from src.domain.entities.scenario import Scenario
from src.domain.value_objects.controller_type import ControllerType
from src.domain.value_objects.pose import Pose
from src.domain.value_objects.spatial import Twist, Wrench

Matrix = npt.NDArray[np.float64]


def baseline_pd(
    desired: Pose,
    actual: Pose,
    v_actual: Twist,
    gains: BaselineGains,
    v_desired: Optional[Twist] = None,
    order: int = DEFAULT_BERNOULLI_ORDER,
    tolerance: float = INJECTIVITY_TOLERANCE,
) -> Tuple[Wrench, BodyError]:
    """End-effector wrench -B(eta)^T K eta + K_d V_e, in the end-effector frame.

    The stiffness part is the exact negative gradient of eta^T K eta / 2 with
    respect to a body-frame perturbation of the actual pose.
    """
    error = config_error(desired, actual, gains.stiffness, tolerance)
    v_desired = np.zeros(6) if v_desired is None else np.asarray(v_desired, dtype=float)
    spring = -bernoulli_operator(error.eta, order).T @ (gains.stiffness @ error.eta)
    damper = gains.damping @ velocity_error(error.e, v_desired, v_actual)
    return spring + damper, error


def map_to_joints(model: ChainModel, theta: npt.ArrayLike, wrench: Wrench) -> npt.NDArray[np.float64]:
    """Joint torques J_b^T w of an end-effector wrench."""
    return body_jacobian(model, theta).T @ wrench


class GeometricPDController(ControllerInterface):
    """End-effector geometric PD with gravity compensation."""

    def __init__(self, model: ChainModel, gains: GainSet, scenario: Scenario):
        self._model = model
        self.gains = gains
        self.scenario = scenario

    @property
    def controller_type(self) -> ControllerType:
        return ControllerType.BASELINE_PD

    @property
    def model(self) -> ChainModel:
        return self._model

    @property
    def estimates(self) -> Tuple[Matrix, ...]:
        return tuple(to_pseudo(inertia) for inertia in self._model.inertias)

    def compute(
        self, t: float, state: KinematicState, desired: DesiredState
    ) -> ControlOutput:
        """Command torque for the current state."""
        n = self._model.n
        margin = self.scenario.injectivity_margin
        target = forward_kinematics(self._model, desired.theta, desired.theta_dot)

        eta = np.zeros((n, 6))
        psi = np.zeros(n)
        v_err = np.zeros((n, 6))
        for i in range(n):
            error = config_error(
                target.poses[i], state.poses[i], self.gains.k_z[i], margin, body=i + 1
            )
            eta[i] = error.eta
            psi[i] = error.psi
            v_err[i] = velocity_error(error.e, target.velocities[i], state.velocities[i])

        wrench, tip_error = baseline_pd(
            target.end_effector,
            state.end_effector,
            state.velocities[-1],
            self.gains.baseline,
            target.velocities[-1],
            self.scenario.bernoulli_order,
            margin,
        )
        torque = map_to_joints(self._model, state.theta, wrench) + gravity_torques(
            self._model, state.theta
        )
        return ControlOutput(
            torque=torque,
            eta=eta,
            psi=psi,
            velocity_error=v_err,
            end_effector_psi=tip_error.psi,
        )
