"""Body module domain entity."""

from dataclasses import dataclass

import numpy as np

from src.domain.exceptions.validation_error import InvalidFieldError
from src.domain.value_objects.pose import Pose
from src.domain.value_objects.spatial import Twist
from src.domain.value_objects.spatial_inertia import SpatialInertia

UNIT_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class BodyModule:
    """One rigid body together with the joint that connects it to its parent.

    The joint moves the body frame relative to its parent by
    T(theta) = home @ exp(screw_axis * theta), with the screw axis expressed
    in the body frame.
    """

    name: str
    screw_axis: Twist
    home: Pose
    inertia: SpatialInertia
    rotor_inertia: float

    def __post_init__(self):
        """Validate body data."""
        if not self.name or not self.name.strip():
            raise InvalidFieldError("name", "body name is required")

        axis = np.array(self.screw_axis, dtype=float).reshape(-1)
        if axis.shape != (6,):
            raise InvalidFieldError("screw_axis", f"must have 6 entries, got {axis.shape}")
        angular = float(np.linalg.norm(axis[:3]))
        norm = angular if angular > 0.0 else float(np.linalg.norm(axis[3:]))
        if abs(norm - 1.0) > UNIT_TOLERANCE:
            raise InvalidFieldError("screw_axis", f"must be unit-normalized, norm={norm}")
        axis.setflags(write=False)
        object.__setattr__(self, "screw_axis", axis)

        if not self.rotor_inertia > 0.0:
            raise InvalidFieldError(
                "rotor_inertia", f"must be positive, got {self.rotor_inertia}"
            )

    @property
    def is_revolute(self) -> bool:
        """Check if the joint rotates (nonzero angular screw part)."""
        return bool(np.linalg.norm(self.screw_axis[:3]) > 0.0)

    @property
    def mass(self) -> float:
        """Body mass, kg."""
        return self.inertia.mass

    def with_inertia(self, inertia: SpatialInertia) -> "BodyModule":
        """Copy of this body with different inertial parameters."""
        return BodyModule(
            name=self.name,
            screw_axis=self.screw_axis,
            home=self.home,
            inertia=inertia,
            rotor_inertia=self.rotor_inertia,
        )
