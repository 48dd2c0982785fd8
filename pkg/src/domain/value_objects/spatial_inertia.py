"""
Spatial inertia value object.
"""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.domain.exceptions.validation_error import (
    InvalidFieldError,
    PhysicalInconsistencyError,
)

SYMMETRY_TOLERANCE = 1e-9


def _skew(w: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    return np.array([[0.0, -w[2], w[1]], [w[2], 0.0, -w[0]], [-w[1], w[0], 0.0]])


@dataclass(frozen=True, eq=False)
class SpatialInertia:
    """Rigid-body inertia about the body frame origin.

    mass: kg; first_moment h = m * c with c the center of mass in the body frame
    (kg m); rotational_inertia I_A about the frame origin (kg m^2).
    """

    mass: float
    first_moment: npt.NDArray[np.float64]
    rotational_inertia: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        """Validate the inertial parameters and freeze the arrays."""
        mass = float(self.mass)
        h = np.array(self.first_moment, dtype=float).reshape(-1)
        inertia = np.array(self.rotational_inertia, dtype=float)

        if not mass > 0.0:
            raise InvalidFieldError("mass", f"must be positive, got {mass}")
        if h.shape != (3,):
            raise InvalidFieldError("first_moment", f"must have 3 entries, got {h.shape}")
        if inertia.shape != (3, 3):
            raise InvalidFieldError(
                "rotational_inertia", f"must be 3x3, got {inertia.shape}"
            )
        asymmetry = float(np.abs(inertia - inertia.T).max())
        if asymmetry > SYMMETRY_TOLERANCE * max(1.0, float(np.abs(inertia).max())):
            raise InvalidFieldError(
                "rotational_inertia", f"must be symmetric (deviation {asymmetry:.3e})"
            )
        inertia = 0.5 * (inertia + inertia.T)

        h.setflags(write=False)
        inertia.setflags(write=False)
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "first_moment", h)
        object.__setattr__(self, "rotational_inertia", inertia)

        min_eigenvalue = float(np.linalg.eigvalsh(self.matrix).min())
        if min_eigenvalue <= 0.0:
            raise PhysicalInconsistencyError(
                "Spatial inertia is not positive definite", min_eigenvalue
            )

    @property
    def matrix(self) -> npt.NDArray[np.float64]:
        """6x6 form [[I_A, h^], [h^T, m I]] for (angular, linear) twists."""
        h_hat = _skew(self.first_moment)
        m = np.zeros((6, 6))
        m[:3, :3] = self.rotational_inertia
        m[:3, 3:] = h_hat
        m[3:, :3] = h_hat.T
        m[3:, 3:] = self.mass * np.eye(3)
        return m

    @property
    def center_of_mass(self) -> npt.NDArray[np.float64]:
        """Center of mass in the body frame, meters."""
        return self.first_moment / self.mass

    @classmethod
    def from_matrix(cls, matrix: npt.ArrayLike) -> "SpatialInertia":
        """Recover the parameters from a 6x6 spatial inertia matrix."""
        m = np.asarray(matrix, dtype=float)
        h_hat = m[:3, 3:]
        h = np.array([h_hat[2, 1], h_hat[0, 2], h_hat[1, 0]])
        return cls(float(np.trace(m[3:, 3:]) / 3.0), h, m[:3, :3])

    def scaled(
        self, mass_factor: float, moment_factor: float, inertia_factor: float
    ) -> "SpatialInertia":
        """Independently scale mass, first moment and rotational inertia."""
        return SpatialInertia(
            self.mass * mass_factor,
            self.first_moment * moment_factor,
            self.rotational_inertia * inertia_factor,
        )

    def is_close(self, other: "SpatialInertia", tolerance: float = 1e-12) -> bool:
        """Compare the 6x6 forms with a relative tolerance."""
        scale = max(1.0, float(np.abs(self.matrix).max()))
        return bool(np.abs(self.matrix - other.matrix).max() <= tolerance * scale)

    def to_dict(self) -> dict:
        """Plain serializable form."""
        return {
            "mass": self.mass,
            "first_moment": self.first_moment.tolist(),
            "rotational_inertia": self.rotational_inertia.tolist(),
        }
