"""
Modular geometric controller.
"""

from typing import Sequence, Tuple

import numpy as np
import numpy.typing as npt

from src.application.interfaces.controllers import (
    ControlOutput,
    ControllerInterface,
    DesiredState,
)
from src.application.services.control.differentiator import JointRateDifferentiator
from src.application.services.control.laws import (
    config_error,
    joint_command,
    kinematic_residual,
    required_acceleration,
    required_joint_action,
    required_joint_velocity,
    required_velocity,
    required_wrench_mgc,
    velocity_error,
)
from src.application.services.inertia import to_pseudo
from src.application.services.kindyn import KinematicState, forward_kinematics
from src.domain.entities.chain_model import ChainModel
from src.domain.entities.gain_set import GainSet
from src.domain.entities.scenario import Scenario
from src.domain.value_objects.controller_type import ControllerType
from src.domain.value_objects.pose import Pose

Matrix = npt.NDArray[np.float64]
Stack = npt.NDArray[np.float64]


class ModularGeometricController(ControllerInterface):
    """Per-body geometric tracking composed along the chain.

    Every body gets a required velocity, acceleration and wrench from its own
    configuration error; joints turn the required relative motion into torque.
    """

    def __init__(self, model: ChainModel, gains: GainSet, scenario: Scenario):
        self._model = model
        self.gains = gains
        self.scenario = scenario
        self.differentiator = JointRateDifferentiator(scenario.dt, scenario.filter_cutoff_hz)
        self._axes = np.array([body.screw_axis for body in model.bodies])

    @property
    def controller_type(self) -> ControllerType:
        return ControllerType.MGC

    @property
    def model(self) -> ChainModel:
        return self._model

    @model.setter
    def model(self, model: ChainModel) -> None:
        self._model = model

    @property
    def estimates(self) -> Tuple[Matrix, ...]:
        return tuple(to_pseudo(inertia) for inertia in self._model.inertias)

    def _required_wrenches(
        self,
        local: Sequence[Pose],
        v_req: Stack,
        a_req: Stack,
        v_actual: Stack,
    ) -> Tuple[Stack, Tuple[Matrix, ...]]:
        wrenches = required_wrench_mgc(
            self._model,
            self.gains,
            local,
            v_req,
            a_req,
            v_actual,
            self.scenario.tip_wrench,
        )
        return wrenches, ()

    def compute(
        self, t: float, state: KinematicState, desired: DesiredState
    ) -> ControlOutput:
        """Command torque for the current state."""
        n = self._model.n
        target = forward_kinematics(
            self._model, desired.theta, desired.theta_dot, desired.theta_ddot
        )
        margin = self.scenario.injectivity_margin
        order = self.scenario.bernoulli_order

        eta = np.zeros((n, 6))
        psi = np.zeros(n)
        v_err = np.zeros((n, 6))
        v_req = np.zeros((n, 6))
        a_req = np.zeros((n, 6))
        for i in range(n):
            error = config_error(
                target.poses[i], state.poses[i], self.gains.k_z[i], margin, body=i + 1
            )
            eta[i] = error.eta
            psi[i] = error.psi
            v_err[i] = velocity_error(error.e, target.velocities[i], state.velocities[i])
            v_req[i] = required_velocity(
                error.e, target.velocities[i], error.eta, self.gains.gamma[i]
            )
            a_req[i] = required_acceleration(
                error.e,
                target.accelerations[i],
                target.velocities[i],
                v_err[i],
                error.eta,
                self.gains.gamma[i],
                order,
            )

        f_req, regressors = self._required_wrenches(state.local, v_req, a_req, state.velocities)

        theta_dot_req = np.zeros(n)
        residual = np.zeros((n, 6))
        for i in range(n):
            parent = v_req[i - 1] if i > 0 else np.zeros(6)
            theta_dot_req[i] = required_joint_velocity(
                v_req[i], parent, state.local[i], self._axes[i]
            )
            residual[i] = kinematic_residual(
                v_req[i], parent, state.local[i], self._axes[i], theta_dot_req[i]
            )
        theta_ddot_req = self.differentiator.update(theta_dot_req)

        action = required_joint_action(
            theta_ddot_req,
            theta_dot_req,
            state.theta_dot,
            self._model.rotor_inertias,
            self.gains.k_a,
        )
        torque = np.array(
            [joint_command(self._axes[i], f_req[i], action[i]) for i in range(n)]
        )

        return ControlOutput(
            torque=torque,
            eta=eta,
            psi=psi,
            velocity_error=v_err,
            end_effector_psi=float(psi[-1]),
            v_req=v_req,
            a_req=a_req,
            f_req=f_req,
            theta_dot_req=theta_dot_req,
            theta_ddot_req=theta_ddot_req,
            residual=residual,
            regressors=regressors,
        )
