"""Run scenario use case implementation."""

import time as wall_clock
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.application.interfaces.controllers import (
    ControllerInterface,
    ControlOutput,
    DesiredState,
)
from src.application.services import trajectory
from src.application.services.analysis import (
    estimate_bound_check,
    fit_decay,
    lyapunov_violations,
)
from src.application.services.control.diagnostics import (
    plant_wrenches,
    total_lyapunov,
    vpf_bookkeeping,
)
from src.application.services.control.factory import ControllerFactory
from src.application.services.inertia import (
    bregman_divergence,
    relative_eigenvalues,
    spd_margin,
    to_pseudo,
)
from src.application.services.integrator import integrate_hold, is_finite_state
from src.application.services.kindyn import (
    KinematicState,
    body_jacobian,
    forward_dynamics,
    forward_kinematics,
    fk_chain,
    total_energy,
)
from src.application.services.liegroup import rotation_angle
from src.application.services.perturbation import perturb_inertias
from src.config.logging import get_logger
from src.config.settings import settings
from src.domain.entities.scenario import Experiment
from src.domain.entities.trace import RunSummary, Trace
from src.domain.exceptions.numerical_error import SimulationAbortedError

logger = get_logger(__name__)

ENERGY_SCALE_FLOOR = 1e-9


@dataclass
class RunResult:
    """Trace and summary of one run."""

    trace: Trace
    summary: RunSummary


class _Recorder:
    """Preallocated per-sample storage for a trace."""

    def __init__(self, samples: int, n: int):
        self.arrays = {
            "time": np.zeros(samples),
            "theta": np.zeros((samples, n)),
            "theta_dot": np.zeros((samples, n)),
            "theta_desired": np.zeros((samples, n)),
            "torque": np.zeros((samples, n)),
            "eta": np.zeros((samples, n, 6)),
            "psi": np.zeros((samples, n)),
            "velocity_error": np.zeros((samples, n, 6)),
            "body_speed": np.zeros((samples, n)),
            "vpf": np.zeros((samples, n)),
            "vpf_defect": np.zeros(samples),
            "consistency_residual": np.zeros((samples, n)),
            "lyapunov": np.zeros(samples),
            "lyapunov_adaptive": np.zeros(samples),
            "divergence": np.zeros((samples, n)),
            "lambda_min": np.zeros((samples, n)),
            "lambda_max_ratio": np.zeros((samples, n)),
            "estimate_norm": np.zeros((samples, n)),
            "position_error": np.zeros((samples, 3)),
            "orientation_error": np.zeros(samples),
            "energy_residual": np.zeros(samples),
        }

    def __setitem__(self, key: tuple, value) -> None:
        name, *index = key
        self.arrays[name][tuple(index)] = value

    def build(self) -> Trace:
        return Trace(**self.arrays)


class RunScenarioUseCase:
    """Use case for running one closed-loop scenario."""

    def __init__(self, controller_factory: Optional[ControllerFactory] = None):
        self.controller_factory = controller_factory or ControllerFactory()

    def build_controller(self, experiment: Experiment) -> ControllerInterface:
        """Controller bound to the (possibly perturbed) model of the experiment."""
        scenario = experiment.scenario
        model = perturb_inertias(experiment.model, scenario.perturbation, scenario.seed)
        return self.controller_factory.create_controller(
            scenario.controller, model, experiment.gains, scenario
        )

    def execute(
        self,
        experiment: Experiment,
        controller: Optional[ControllerInterface] = None,
    ) -> RunResult:
        """Execute the scenario and return its trace and summary."""
        plant = experiment.model
        scenario = experiment.scenario
        started = wall_clock.perf_counter()

        # 1. Controller and initial state
        controller = controller or self.build_controller(experiment)
        true_pseudo = [to_pseudo(inertia) for inertia in plant.inertias]
        theta = scenario.initial_theta.copy()
        theta_dot = scenario.initial_theta_dot.copy()
        dt, steps = scenario.dt, scenario.steps
        tip = scenario.tip_wrench
        recorder = _Recorder(steps + 1, plant.n)
        progress_every = max(1, int(round(settings.PROGRESS_LOG_INTERVAL / dt)))

        logger.info(
            "Run started",
            scenario=scenario.name,
            controller=controller.name,
            bodies=plant.n,
            steps=steps,
            control_rate=scenario.control_rate,
            substeps=scenario.substeps,
        )

        energy = total_energy(plant, theta, theta_dot)
        for k in range(steps + 1):
            t = k * dt

            # 2. Evaluate the controller at the sampling instant
            desired = DesiredState(*trajectory.evaluate(scenario.trajectories, t))
            state = forward_kinematics(plant, theta, theta_dot)
            output = controller.compute(t, state, desired)

            # 3. Record diagnostics
            lyapunov = self._record(
                recorder, k, t, experiment, controller, state, desired, output, true_pseudo
            )
            if k % progress_every == 0 and k > 0:
                logger.info(
                    "Run progress",
                    scenario=scenario.name,
                    t=round(t, 6),
                    lyapunov=lyapunov,
                    max_eta=float(np.linalg.norm(output.eta, axis=1).max()),
                    min_estimate_eigenvalue=float(recorder.arrays["lambda_min"][k].min()),
                )
            if k == steps:
                break

            # 4. Integrate the plant under zero-order-hold torque
            torque = output.torque

            def accel(q: np.ndarray, qd: np.ndarray) -> np.ndarray:
                return forward_dynamics(plant, q, qd, torque, tip)

            theta_next, theta_dot_next = integrate_hold(
                theta, theta_dot, accel, dt, scenario.substeps
            )
            if not is_finite_state(theta_next, theta_dot_next):
                logger.error("Run aborted", scenario=scenario.name, step=k, t=t)
                raise SimulationAbortedError(k, t, "non-finite joint state")

            # 5. Energy bookkeeping and adaptation
            energy_next = total_energy(plant, theta_next, theta_dot_next)
            work = float(torque @ (theta_next - theta))
            if np.any(tip):
                # the environment absorbs V_tip^T F_tip; trapezoid over the step
                tip_velocity = body_jacobian(plant, theta_next) @ theta_dot_next
                work -= 0.5 * dt * float((state.velocities[-1] + tip_velocity) @ tip)
            scale = (
                abs(energy_next - energy)
                + abs(work)
                + ENERGY_SCALE_FLOOR * (abs(energy) + 1.0)
            )
            recorder["energy_residual", k + 1] = abs(energy_next - energy - work) / scale
            controller.update(output, dt)

            theta, theta_dot, energy = theta_next, theta_dot_next, energy_next

        trace = recorder.build()
        if not trace.is_finite():
            raise SimulationAbortedError(steps, scenario.duration, "non-finite diagnostics")
        summary = self.summarize(trace, experiment, controller)
        summary.wall_time_s = wall_clock.perf_counter() - started

        logger.info(
            "Run finished",
            scenario=scenario.name,
            controller=controller.name,
            final_position_error=summary.final_position_error,
            decay_rate=summary.decay_rate,
            max_consistency_residual=float(trace.consistency_residual.max()),
            wall_time_s=round(summary.wall_time_s, 3),
        )
        return RunResult(trace=trace, summary=summary)

    def _record(
        self,
        recorder: _Recorder,
        k: int,
        t: float,
        experiment: Experiment,
        controller: ControllerInterface,
        state: KinematicState,
        desired: DesiredState,
        output: ControlOutput,
        true_pseudo: list,
    ) -> float:
        plant = experiment.model
        gamma = experiment.gains.adaptation.gamma

        recorder["time", k] = t
        recorder["theta", k] = state.theta
        recorder["theta_dot", k] = state.theta_dot
        recorder["theta_desired", k] = desired.theta
        recorder["torque", k] = output.torque
        recorder["eta", k] = output.eta
        recorder["psi", k] = output.psi
        recorder["velocity_error", k] = output.velocity_error
        recorder["body_speed", k] = np.linalg.norm(state.velocities, axis=1)

        if output.is_modular:
            wrenches = plant_wrenches(plant, state, output.torque, experiment.scenario.tip_wrench)
            record = vpf_bookkeeping(
                plant, state.local, state.velocities, state.theta_dot, output, wrenches
            )
            recorder["vpf", k] = record.body
            recorder["vpf_defect", k] = record.relative_defect
            recorder["consistency_residual", k] = np.linalg.norm(output.residual, axis=1)

        lyapunov = total_lyapunov(plant, state, desired, output)
        divergences = []
        for i, l_hat in enumerate(controller.estimates):
            divergences.append(bregman_divergence(true_pseudo[i], l_hat, gamma))
            recorder["lambda_min", k, i] = spd_margin(l_hat)
            recorder["lambda_max_ratio", k, i] = float(
                relative_eigenvalues(true_pseudo[i], l_hat).max()
            )
            recorder["estimate_norm", k, i] = float(np.linalg.norm(l_hat))
        recorder["divergence", k] = divergences
        recorder["lyapunov", k] = lyapunov
        recorder["lyapunov_adaptive", k] = lyapunov + float(np.sum(divergences))

        target = fk_chain(plant, desired.theta)[-1]
        actual = state.end_effector
        recorder["position_error", k] = actual.translation - target.translation
        recorder["orientation_error", k] = rotation_angle(target.rotation.T @ actual.rotation)
        return lyapunov

    def _flag_initial_error(self, experiment: Experiment, v_total: float) -> bool:
        """Compare v_T(0) with lambda_min(K_z) pi^2 / 2; logs, never raises."""
        threshold = 0.5 * np.pi**2 * min(
            float(np.linalg.eigvalsh(k_z).min()) for k_z in experiment.gains.k_z
        )
        flagged = bool(v_total > threshold)
        if flagged:
            logger.warning(
                "Large initial error",
                scenario=experiment.scenario.name,
                initial_lyapunov=v_total,
                threshold=threshold,
            )
        return flagged

    def summarize(
        self, trace: Trace, experiment: Experiment, controller: ControllerInterface
    ) -> RunSummary:
        """Scalar metrics of a finished trace."""
        gamma = experiment.gains.adaptation.gamma
        adaptive = controller.controller_type.is_adaptive
        decay = fit_decay(trace, adaptive=adaptive)
        bound = estimate_bound_check(trace, gamma)
        return RunSummary(
            scenario=experiment.scenario.name,
            controller=controller.name,
            steps=experiment.scenario.steps,
            duration=experiment.scenario.duration,
            final_position_error=float(trace.position_error_norm[-1]),
            final_orientation_error=float(trace.orientation_error[-1]),
            final_eta_norm=float(trace.eta_norm[-1].max()),
            decay_rate=decay.rate,
            decay_r_squared=decay.r_squared,
            max_vpf_defect=float(trace.vpf_defect.max()),
            min_lambda_min=float(trace.lambda_min.min()),
            max_lambda_ratio=float(trace.lambda_max_ratio.max()),
            sup_body_speed=trace.body_speed.max(axis=0).tolist(),
            torque_rms=np.sqrt(np.mean(trace.torque**2, axis=0)).tolist(),
            lyapunov_violations=lyapunov_violations(trace),
            max_energy_residual=float(trace.energy_residual.max()),
            estimate_bound_ok=bound.ok if adaptive else None,
            estimate_bound_margin=bound.margin if adaptive else None,
            initial_lyapunov=float(trace.lyapunov[0]),
            initial_error_flagged=self._flag_initial_error(
                experiment, float(trace.lyapunov_adaptive[0])
            ),
            extra={
                "decay_window_end": decay.window_end,
                "estimate_bound": bound.bound,
                "estimate_transient_bounded": bound.transient_bounded,
            },
        )
