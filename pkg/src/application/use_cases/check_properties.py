"""Check properties use case implementation."""

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from src.application.interfaces.controllers import DesiredState
from src.application.services.analysis import fit_decay_series
from src.application.services.control.amgc import AdaptiveModularGeometricController
from src.application.services.control.diagnostics import plant_wrenches, vpf_bookkeeping
from src.application.services.control.mgc import ModularGeometricController
from src.application.services.inertia import (
    adapt_step,
    bregman_divergence,
    bregman_divergence_spectral,
    from_pseudo,
    metric_inner,
    phi,
    phi_inverse,
    regressor,
    spatial_matrix_from_pseudo,
    spd_margin,
    to_pseudo,
)
from src.application.services.kindyn import (
    body_accelerations,
    body_jacobian,
    body_velocities,
    forward_dynamics,
    forward_kinematics,
    inverse_dynamics,
    mass_matrix,
    total_energy,
)
from src.application.services.liegroup import (
    ad,
    adjoint,
    bernoulli_operator,
    bracket,
    coad,
    exp_se3,
    hat6,
    log_se3,
    vee6,
)
from src.config.logging import get_logger
from src.domain.entities.chain_model import ChainModel
from src.domain.entities.gain_set import AdaptationConfig, GainSet
from src.domain.entities.scenario import JointTrajectory, Scenario
from src.domain.exceptions.numerical_error import PropertyCheckError
from src.domain.value_objects.controller_type import ControllerType
from src.domain.value_objects.pose import Pose

logger = get_logger(__name__)

GROUPS = ("liegroup", "inertia", "kindyn", "control", "sim")
SAMPLES = 100
ROUND_TRIP_SAMPLES = 1000
MAX_ROUND_TRIP_ANGLE = 2.8
MAX_DLOG_NORM = 0.5


@dataclass(frozen=True)
class CheckContext:
    """Inputs shared by all property checks."""

    model: ChainModel
    rng: np.random.Generator


@dataclass(frozen=True)
class PropertyResult:
    """Outcome of a single property check."""

    name: str
    passed: bool
    error: float
    tolerance: float
    detail: str = ""


CheckFunction = Callable[[CheckContext], Tuple[float, float]]
_REGISTRY: Dict[str, CheckFunction] = {}


def check(name: str) -> Callable[[CheckFunction], CheckFunction]:
    """Register a property; the function returns (observed error, tolerance)."""
    group = name.split(".", 1)[0]
    if group not in GROUPS:
        raise ValueError(f"Unknown property group '{group}'")

    def register(function: CheckFunction) -> CheckFunction:
        _REGISTRY[name] = function
        return function

    return register


def available_checks() -> List[str]:
    """Registered property names in registration order."""
    return list(_REGISTRY)


def _random_twist(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return scale * rng.standard_normal(6)


def _random_pose(rng: np.random.Generator) -> Pose:
    return exp_se3(_random_twist(rng, 0.8))


def _random_pseudo(rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((4, 4))
    l = a @ a.T
    return 0.5 * (l + l.T) + 0.5 * np.eye(4)


def _random_symmetric(rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((4, 4))
    return 0.5 * (a + a.T)


def _relative(error: float, scale: float) -> float:
    return error / max(scale, 1.0)


def _random_state(ctx: CheckContext) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = ctx.model.n
    return (
        ctx.rng.uniform(-1.0, 1.0, n),
        ctx.rng.uniform(-0.5, 0.5, n),
        ctx.rng.uniform(-0.5, 0.5, n),
    )


def _scenario(model: ChainModel, theta: np.ndarray, controller: ControllerType) -> Scenario:
    return Scenario(
        name="property-check",
        model=model.name,
        controller=controller,
        trajectories=tuple(JointTrajectory.set_point(value) for value in theta),
        initial_theta=theta,
        initial_theta_dot=np.zeros(model.n),
    )


# Lie group


@check("liegroup.hat_vee_roundtrip")
def _hat_vee(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        x = _random_twist(ctx.rng)
        worst = max(worst, float(np.abs(vee6(hat6(x)) - x).max()))
    return worst, 1e-15


@check("liegroup.exp_log_roundtrip")
def _exp_log(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(ROUND_TRIP_SAMPLES):
        w = ctx.rng.standard_normal(3)
        w *= ctx.rng.uniform(0.0, MAX_ROUND_TRIP_ANGLE) / np.linalg.norm(w)
        x = np.concatenate([w, ctx.rng.standard_normal(3)])
        error = float(np.linalg.norm(log_se3(exp_se3(x)) - x))
        worst = max(worst, _relative(error, float(np.linalg.norm(x))))
    return worst, 1e-10


@check("liegroup.adjoint_homomorphism")
def _adjoint_homomorphism(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        a, b = _random_pose(ctx.rng), _random_pose(ctx.rng)
        lhs = adjoint(a @ b)
        error = float(np.abs(lhs - adjoint(a) @ adjoint(b)).max())
        worst = max(worst, _relative(error, float(np.abs(lhs).max())))
    return worst, 1e-10


@check("liegroup.adjoint_conjugation")
def _adjoint_conjugation(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        pose, x = _random_pose(ctx.rng), _random_twist(ctx.rng)
        lhs = hat6(adjoint(pose) @ x)
        rhs = pose.matrix @ hat6(x) @ pose.inverse().matrix
        worst = max(worst, _relative(float(np.abs(lhs - rhs).max()), float(np.abs(lhs).max())))
    return worst, 1e-10


@check("liegroup.jacobi_identity")
def _jacobi(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        x, y, z = (_random_twist(ctx.rng) for _ in range(3))
        total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        worst = max(worst, float(np.abs(total).max()))
    return worst, 1e-10


@check("liegroup.coad_duality")
def _coad_duality(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        x, y, f = (_random_twist(ctx.rng) for _ in range(3))
        lhs = float(coad(x, f) @ y)
        rhs = float(f @ (ad(x) @ y))
        worst = max(worst, _relative(abs(lhs - rhs), abs(rhs)))
    return worst, 1e-12


@check("liegroup.bernoulli_dlog")
def _bernoulli_dlog(ctx: CheckContext) -> Tuple[float, float]:
    h = 1e-6
    worst = 0.0
    for _ in range(SAMPLES):
        eta = ctx.rng.standard_normal(6)
        eta *= ctx.rng.uniform(0.05, MAX_DLOG_NORM) / np.linalg.norm(eta)
        xi = _random_twist(ctx.rng)
        e = exp_se3(eta)
        forward = log_se3(e @ exp_se3(h * xi))
        backward = log_se3(e @ exp_se3(-h * xi))
        numeric = (forward - backward) / (2.0 * h)
        analytic = bernoulli_operator(eta) @ xi
        error = float(np.abs(numeric - analytic).max())
        worst = max(worst, _relative(error, float(np.abs(analytic).max())))
    return worst, 1e-6


# Inertia


@check("inertia.pseudo_roundtrip")
def _pseudo_roundtrip(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        l = _random_pseudo(ctx.rng)
        inertia = from_pseudo(l)
        error = float(np.abs(to_pseudo(inertia) - l).max())
        linear = float(np.abs(spatial_matrix_from_pseudo(l) - inertia.matrix).max())
        worst = max(worst, _relative(max(error, linear), float(np.abs(l).max())))
    return worst, 1e-10


@check("inertia.bregman_dual_formula")
def _bregman_dual(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        l, l_hat = _random_pseudo(ctx.rng), _random_pseudo(ctx.rng)
        direct = bregman_divergence(l, l_hat, 1.0)
        spectral = bregman_divergence_spectral(l, l_hat, 1.0)
        worst = max(worst, _relative(abs(direct - spectral), abs(direct)))
    return worst, 1e-10


@check("inertia.bregman_nonnegative")
def _bregman_nonnegative(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        l, l_hat = _random_pseudo(ctx.rng), _random_pseudo(ctx.rng)
        worst = max(worst, -bregman_divergence(l, l_hat, 1.0))
        worst = max(worst, abs(bregman_divergence(l, l, 1.0)))
    return worst, 1e-10


@check("inertia.metric_affine_invariance")
def _metric_invariance(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        l = _random_pseudo(ctx.rng)
        x, y = _random_symmetric(ctx.rng), _random_symmetric(ctx.rng)
        q, _ = np.linalg.qr(ctx.rng.standard_normal((4, 4)))
        a = q * ctx.rng.uniform(0.5, 2.0, 4)
        base = metric_inner(l, x, y)
        moved = metric_inner(a @ l @ a.T, a @ x @ a.T, a @ y @ a.T)
        worst = max(worst, _relative(abs(base - moved), abs(base)))
    return worst, 1e-9


@check("inertia.regressor_trace_identity")
def _regressor_identity(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        l = _random_pseudo(ctx.rng)
        m = spatial_matrix_from_pseudo(l)
        v_ref, a_ref, v_body = (_random_twist(ctx.rng) for _ in range(3))
        v_err = v_ref - v_body
        power = float(v_err @ (m @ a_ref - coad(v_body, m @ v_ref)))
        traced = float(np.trace(l @ regressor(v_err, v_ref, a_ref, v_body)))
        worst = max(worst, _relative(abs(power - traced), abs(power)))
    return worst, 1e-8


@check("inertia.adapt_step_spd")
def _adapt_spd(ctx: CheckContext) -> Tuple[float, float]:
    config = AdaptationConfig(gamma=1.0, sigma=0.0)
    worst = 0.0
    for _ in range(SAMPLES):
        l_hat = _random_pseudo(ctx.rng)
        reg = _random_symmetric(ctx.rng)
        # |L_hat| |R| <= 1 keeps the flow finite well past the ten steps taken
        reg /= np.linalg.norm(l_hat, 2) * np.linalg.norm(reg, 2)
        for _ in range(10):
            l_hat = adapt_step(l_hat, reg, config, 1e-2, body=0)
        worst = max(worst, -spd_margin(l_hat))
    return worst, 0.0


@check("inertia.phi_inverse")
def _phi_inverse(ctx: CheckContext) -> Tuple[float, float]:
    worst = abs(float(phi(1.0)))
    for value in ctx.rng.uniform(0.0, 20.0, SAMPLES):
        lam = phi_inverse(float(value))
        worst = max(worst, _relative(abs(float(phi(lam)) - value), value))
    return worst, 1e-10


# Kinematics and dynamics


@check("kindyn.mass_matrix_spd")
def _mass_matrix_spd(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        theta, _, _ = _random_state(ctx)
        m = mass_matrix(ctx.model, theta)
        scale = float(np.abs(m).max())
        asymmetry = _relative(float(np.abs(m - m.T).max()), scale)
        worst = max(worst, asymmetry, 0.0 if spd_margin(m) > 0.0 else math.inf)
    return worst, 1e-9


@check("kindyn.id_fd_roundtrip")
def _id_fd(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        theta, theta_dot, theta_ddot = _random_state(ctx)
        tau = inverse_dynamics(ctx.model, theta, theta_dot, theta_ddot)
        recovered = forward_dynamics(ctx.model, theta, theta_dot, tau)
        error = float(np.abs(recovered - theta_ddot).max())
        worst = max(worst, _relative(error, float(np.abs(theta_ddot).max())))
    return worst, 1e-8


@check("kindyn.acceleration_derivative")
def _acceleration_derivative(ctx: CheckContext) -> Tuple[float, float]:
    h = 1e-5
    worst = 0.0
    for _ in range(SAMPLES // 4):
        theta, theta_dot, theta_ddot = _random_state(ctx)

        def velocities_at(t: float) -> np.ndarray:
            return body_velocities(
                ctx.model,
                theta + t * theta_dot + 0.5 * t * t * theta_ddot,
                theta_dot + t * theta_ddot,
            )

        numeric = (velocities_at(h) - velocities_at(-h)) / (2.0 * h)
        analytic = body_accelerations(ctx.model, theta, theta_dot, theta_ddot)
        error = float(np.abs(numeric - analytic).max())
        worst = max(worst, _relative(error, float(np.abs(analytic).max())))
    return worst, 1e-6


@check("kindyn.jacobian_velocity")
def _jacobian_velocity(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES):
        theta, theta_dot, _ = _random_state(ctx)
        tip = body_velocities(ctx.model, theta, theta_dot)[-1]
        error = float(np.abs(body_jacobian(ctx.model, theta) @ theta_dot - tip).max())
        worst = max(worst, _relative(error, float(np.abs(tip).max())))
    return worst, 1e-12


@check("kindyn.power_balance")
def _power_balance(ctx: CheckContext) -> Tuple[float, float]:
    h = 1e-5
    worst = 0.0
    for _ in range(SAMPLES // 4):
        theta, theta_dot, _ = _random_state(ctx)
        tau = ctx.rng.uniform(-10.0, 10.0, ctx.model.n)
        theta_ddot = forward_dynamics(ctx.model, theta, theta_dot, tau)

        def energy_at(t: float) -> float:
            return total_energy(
                ctx.model,
                theta + t * theta_dot + 0.5 * t * t * theta_ddot,
                theta_dot + t * theta_ddot,
            )

        rate = (energy_at(h) - energy_at(-h)) / (2.0 * h)
        power = float(tau @ theta_dot)
        scale = abs(power) + 1e-6 * abs(energy_at(0.0))
        worst = max(worst, _relative(abs(rate - power), scale))
    return worst, 1e-5


# Control


@check("control.perfect_tracking")
def _perfect_tracking(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    for _ in range(SAMPLES // 4):
        theta, theta_dot, _ = _random_state(ctx)
        scenario = _scenario(ctx.model, theta, ControllerType.MGC)
        controller = ModularGeometricController(ctx.model, GainSet.defaults(ctx.model.n), scenario)
        desired = DesiredState(theta, theta_dot, np.zeros(ctx.model.n))
        state = forward_kinematics(ctx.model, theta, theta_dot)
        torque = controller.compute(0.0, state, desired).torque
        expected = inverse_dynamics(ctx.model, theta, theta_dot, np.zeros(ctx.model.n))
        error = float(np.abs(torque - expected).max())
        worst = max(worst, _relative(error, float(np.abs(expected).max())))
    return worst, 1e-9


@check("control.reduction_identity")
def _reduction_identity(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    gains = GainSet.defaults(ctx.model.n)
    for _ in range(SAMPLES // 4):
        theta, theta_dot, _ = _random_state(ctx)
        target = theta + ctx.rng.uniform(-0.3, 0.3, ctx.model.n)
        scenario = _scenario(ctx.model, target, ControllerType.AMGC)
        desired = DesiredState(target, np.zeros(ctx.model.n), np.zeros(ctx.model.n))
        state = forward_kinematics(ctx.model, theta, theta_dot)
        exact = ModularGeometricController(ctx.model, gains, scenario)
        adaptive = AdaptiveModularGeometricController(ctx.model, gains, scenario)
        reference = exact.compute(0.0, state, desired).torque
        error = float(np.abs(adaptive.compute(0.0, state, desired).torque - reference).max())
        worst = max(worst, _relative(error, float(np.abs(reference).max())))
    return worst, 1e-12


@check("control.vpf_telescoping")
def _vpf_telescoping(ctx: CheckContext) -> Tuple[float, float]:
    worst = 0.0
    gains = GainSet.defaults(ctx.model.n)
    for _ in range(SAMPLES // 4):
        theta, theta_dot, _ = _random_state(ctx)
        target = theta + ctx.rng.uniform(-0.3, 0.3, ctx.model.n)
        scenario = _scenario(ctx.model, target, ControllerType.MGC)
        controller = ModularGeometricController(ctx.model, gains, scenario)
        desired = DesiredState(target, np.zeros(ctx.model.n), np.zeros(ctx.model.n))
        state = forward_kinematics(ctx.model, theta, theta_dot)
        output = controller.compute(0.0, state, desired)
        wrenches = plant_wrenches(ctx.model, state, output.torque, scenario.tip_wrench)
        record = vpf_bookkeeping(
            ctx.model, state.local, state.velocities, theta_dot, output, wrenches
        )
        worst = max(worst, record.relative_defect)
    return worst, 1e-9


# Simulation analysis


@check("sim.decay_fit_exponential")
def _decay_fit(ctx: CheckContext) -> Tuple[float, float]:
    time = np.linspace(0.0, 5.0, 5001)
    fit = fit_decay_series(time, np.exp(-2.0 * time))
    return abs(fit.rate - 2.0), 1e-6


class CheckPropertiesUseCase:
    """Use case for running the property suite against a chain model."""

    def __init__(self, model: ChainModel, seed: int = 0):
        self.model = model
        self.seed = seed

    def execute(self, selection: Optional[str] = None) -> List[PropertyResult]:
        """Run every property whose name starts with selection (all when None)."""
        names = [
            name
            for name in available_checks()
            if selection is None or name == selection or name.startswith(f"{selection}.")
        ]
        logger.info("Property checks started", count=len(names), selection=selection)

        results = []
        for name in names:
            ctx = CheckContext(model=self.model, rng=np.random.default_rng(self.seed))
            try:
                error, tolerance = _REGISTRY[name](ctx)
                passed = bool(np.isfinite(error) and error <= tolerance)
                result = PropertyResult(name, passed, float(error), float(tolerance))
            except Exception as exc:
                logger.warning("Property check raised", check=name, error=str(exc))
                result = PropertyResult(name, False, math.inf, 0.0, detail=str(exc))
            if not result.passed:
                logger.warning(
                    "Property check failed",
                    check=name,
                    error=result.error,
                    tolerance=result.tolerance,
                )
            results.append(result)

        failed = sum(not r.passed for r in results)
        logger.info("Property checks finished", passed=len(results) - failed, failed=failed)
        return results

    @staticmethod
    def ensure_passed(results: List[PropertyResult]) -> None:
        """Raise PropertyCheckError naming every failed property."""
        failed = [result.name for result in results if not result.passed]
        if failed:
            raise PropertyCheckError(failed)
