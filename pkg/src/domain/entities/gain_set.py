"""Controller gain domain entities."""

from dataclasses import dataclass, field, replace
from typing import Sequence, Tuple

import numpy as np
import numpy.typing as npt

from src.domain.exceptions.validation_error import InvalidFieldError

Matrix = npt.NDArray[np.float64]

DEFAULT_GAMMA = (5.0, 3.0, 3.0, 1.5)
DEFAULT_K_A = (10000.0, 20000.0, 10000.0, 350.0)
DEFAULT_K_V = 2000.0
DEFAULT_ADAPTATION_GAIN = 8e4
DEFAULT_LEAKAGE = 0.1
K_Z_FRACTION = 0.5
DEFAULT_BASELINE_ROTATIONAL_STIFFNESS = 25000.0
DEFAULT_BASELINE_TRANSLATIONAL_STIFFNESS = 2500.0
DEFAULT_BASELINE_DAMPING = 8000.0


def pad_to(values: Sequence[float], n: int) -> list[float]:
    """First n values, repeating the last one when the list is short."""
    return [float(values[min(i, len(values) - 1)]) for i in range(n)]


def require_spd(name: str, matrix: npt.ArrayLike, size: int = 6) -> Matrix:
    """Return a read-only symmetric copy, rejecting non-SPD input."""
    m = np.array(matrix, dtype=float)
    if m.shape != (size, size):
        raise InvalidFieldError(name, f"must be {size}x{size}, got {m.shape}")
    scale = max(1.0, float(np.abs(m).max()))
    if float(np.abs(m - m.T).max()) > 1e-9 * scale:
        raise InvalidFieldError(name, "must be symmetric")
    m = 0.5 * (m + m.T)
    smallest = float(np.linalg.eigvalsh(m).min())
    if smallest <= 0.0:
        raise InvalidFieldError(
            name, f"must be positive definite (smallest eigenvalue {smallest:.3e})"
        )
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class AdaptationConfig:
    """Adaptation gain, leakage and nominal pseudo-inertias.

    nominal is empty until a run binds it to the controller's model.
    """

    gamma: float = DEFAULT_ADAPTATION_GAIN
    sigma: float = DEFAULT_LEAKAGE
    nominal: Tuple[Matrix, ...] = ()

    def __post_init__(self):
        """Validate adaptation parameters."""
        if not self.gamma > 0.0:
            raise InvalidFieldError("adaptation.gamma", f"must be positive, got {self.gamma}")
        if not self.sigma >= 0.0:
            raise InvalidFieldError(
                "adaptation.sigma", f"must be non-negative, got {self.sigma}"
            )
        nominal = tuple(
            require_spd(f"adaptation.nominal.{i}", lo, size=4)
            for i, lo in enumerate(self.nominal)
        )
        object.__setattr__(self, "nominal", nominal)

    def with_nominal(self, nominal: Sequence[Matrix]) -> "AdaptationConfig":
        """Copy bound to the given nominal pseudo-inertias."""
        return replace(self, nominal=tuple(nominal))


@dataclass(frozen=True, eq=False)
class BaselineGains:
    """End-effector stiffness and damping of the geometric PD baseline."""

    stiffness: Matrix
    damping: Matrix

    def __post_init__(self):
        object.__setattr__(self, "stiffness", require_spd("baseline.stiffness", self.stiffness))
        object.__setattr__(self, "damping", require_spd("baseline.damping", self.damping))

    @classmethod
    def defaults(cls) -> "BaselineGains":
        """Default impedance gains."""
        return cls(
            stiffness=np.diag(
                [DEFAULT_BASELINE_ROTATIONAL_STIFFNESS] * 3
                + [DEFAULT_BASELINE_TRANSLATIONAL_STIFFNESS] * 3
            ),
            damping=DEFAULT_BASELINE_DAMPING * np.eye(6),
        )


@dataclass(frozen=True, eq=False)
class GainSet:
    """Gains of the modular controllers and the baseline.

    gamma: per-body 6x6 error-convergence gains. k_z: per-body 6x6 configuration
    energy weights. k_v: 6x6 velocity feedback shared by all bodies. k_a: per-joint
    velocity feedback (N m s/rad).
    """

    gamma: Tuple[Matrix, ...]
    k_z: Tuple[Matrix, ...]
    k_v: Matrix
    k_a: npt.NDArray[np.float64]
    adaptation: AdaptationConfig = field(default_factory=AdaptationConfig)
    baseline: BaselineGains = field(default_factory=BaselineGains.defaults)

    def __post_init__(self):
        """Validate gain data."""
        gamma = tuple(require_spd(f"gains.gamma.{i}", g) for i, g in enumerate(self.gamma))
        k_z = tuple(require_spd(f"gains.k_z.{i}", k) for i, k in enumerate(self.k_z))
        if len(k_z) != len(gamma):
            raise InvalidFieldError(
                "gains.k_z", f"expected {len(gamma)} entries, got {len(k_z)}"
            )
        k_a = np.array(self.k_a, dtype=float).reshape(-1)
        if k_a.shape != (len(gamma),):
            raise InvalidFieldError(
                "gains.k_a", f"expected {len(gamma)} entries, got {k_a.shape[0]}"
            )
        if np.any(k_a <= 0.0):
            raise InvalidFieldError("gains.k_a", "all entries must be positive")
        k_a.setflags(write=False)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "k_z", k_z)
        object.__setattr__(self, "k_v", require_spd("gains.k_v", self.k_v))
        object.__setattr__(self, "k_a", k_a)

    @property
    def n(self) -> int:
        """Number of bodies the gains are sized for."""
        return len(self.gamma)

    @staticmethod
    def default_k_z(gamma: Matrix, k_v: Matrix) -> Matrix:
        """K_z = Gamma diag(K_v) / 2, used when no K_z is given."""
        return K_Z_FRACTION * gamma @ np.diag(np.diag(k_v))

    @classmethod
    def defaults(
        cls,
        n: int,
        adaptation: AdaptationConfig | None = None,
        baseline: BaselineGains | None = None,
    ) -> "GainSet":
        """Default gains for an n-body chain; lists shorter than n repeat their tail."""
        k_v = DEFAULT_K_V * np.eye(6)
        gamma = [g * np.eye(6) for g in pad_to(DEFAULT_GAMMA, n)]
        return cls(
            gamma=tuple(gamma),
            k_z=tuple(cls.default_k_z(g, k_v) for g in gamma),
            k_v=k_v,
            k_a=np.array(pad_to(DEFAULT_K_A, n)),
            adaptation=adaptation or AdaptationConfig(),
            baseline=baseline or BaselineGains.defaults(),
        )

    def with_adaptation(self, adaptation: AdaptationConfig) -> "GainSet":
        """Copy with a different adaptation configuration."""
        return replace(self, adaptation=adaptation)
