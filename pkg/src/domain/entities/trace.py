"""Simulation trace domain entities."""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import numpy.typing as npt

Array = npt.NDArray[np.float64]


@dataclass
class Trace:
    """Time series sampled at every control instant of a run.

    Per-body arrays have shape (samples, n) or (samples, n, 6); twists follow the
    (angular, linear) ordering.
    """

    time: Array
    theta: Array
    theta_dot: Array
    theta_desired: Array
    torque: Array
    eta: Array
    psi: Array
    velocity_error: Array
    body_speed: Array
    vpf: Array
    vpf_defect: Array
    consistency_residual: Array
    lyapunov: Array
    lyapunov_adaptive: Array
    divergence: Array
    lambda_min: Array
    lambda_max_ratio: Array
    estimate_norm: Array
    position_error: Array
    orientation_error: Array
    energy_residual: Array

    @property
    def samples(self) -> int:
        """Number of recorded control instants."""
        return int(self.time.shape[0])

    @property
    def n(self) -> int:
        """Number of bodies."""
        return int(self.theta.shape[1])

    @property
    def eta_norm(self) -> Array:
        """Per-body norm of the configuration error twist."""
        return np.linalg.norm(self.eta, axis=2)

    @property
    def position_error_norm(self) -> Array:
        """End-effector position error magnitude, meters."""
        return np.linalg.norm(self.position_error, axis=1)

    def is_finite(self) -> bool:
        """Check that every recorded entry is finite."""
        return all(np.all(np.isfinite(value)) for value in vars(self).values())


@dataclass
class RunSummary:
    """Scalar metrics of a finished run."""

    scenario: str
    controller: str
    steps: int
    duration: float
    final_position_error: float
    final_orientation_error: float
    final_eta_norm: float
    decay_rate: float
    decay_r_squared: float
    max_vpf_defect: float
    min_lambda_min: Optional[float]
    max_lambda_ratio: Optional[float]
    sup_body_speed: List[float]
    torque_rms: List[float]
    lyapunov_violations: int
    max_energy_residual: float
    estimate_bound_ok: Optional[bool]
    estimate_bound_margin: Optional[float]
    initial_lyapunov: float
    initial_error_flagged: bool
    wall_time_s: float = 0.0
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """Plain serializable form."""
        return asdict(self)
