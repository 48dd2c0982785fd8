"""Serial chain model domain entity."""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
import numpy.typing as npt

from src.domain.entities.body_module import BodyModule
from src.domain.exceptions.validation_error import InvalidFieldError
from src.domain.value_objects.spatial import Twist
from src.domain.value_objects.spatial_inertia import SpatialInertia


@dataclass(frozen=True, eq=False)
class ChainModel:
    """Serial chain of body modules on a fixed base.

    Body i is the parent of body i+1; body 1 is attached to the base frame,
    in which gravity is expressed (m/s^2).
    """

    name: str
    bodies: Tuple[BodyModule, ...]
    gravity: npt.NDArray[np.float64]

    def __post_init__(self):
        """Validate chain data."""
        bodies = tuple(self.bodies)
        if not bodies:
            raise InvalidFieldError("bodies", "chain needs at least one body")
        gravity = np.array(self.gravity, dtype=float).reshape(-1)
        if gravity.shape != (3,):
            raise InvalidFieldError("gravity", f"must have 3 entries, got {gravity.shape}")
        gravity.setflags(write=False)
        object.__setattr__(self, "bodies", bodies)
        object.__setattr__(self, "gravity", gravity)

    @property
    def n(self) -> int:
        """Number of bodies (and joints)."""
        return len(self.bodies)

    @property
    def total_mass(self) -> float:
        """Aggregate mass, kg."""
        return float(sum(body.mass for body in self.bodies))

    @property
    def base_acceleration(self) -> Twist:
        """Base acceleration that injects gravity into the recursion."""
        return np.concatenate([np.zeros(3), -self.gravity])

    @property
    def rotor_inertias(self) -> npt.NDArray[np.float64]:
        """Rotor inertias per joint."""
        return np.array([body.rotor_inertia for body in self.bodies])

    @property
    def inertias(self) -> Tuple[SpatialInertia, ...]:
        """Spatial inertias per body."""
        return tuple(body.inertia for body in self.bodies)

    def with_inertias(self, inertias: Sequence[SpatialInertia]) -> "ChainModel":
        """Copy of this chain with replaced inertial parameters."""
        if len(inertias) != self.n:
            raise InvalidFieldError(
                "inertias", f"expected {self.n} entries, got {len(inertias)}"
            )
        return ChainModel(
            name=self.name,
            bodies=tuple(b.with_inertia(m) for b, m in zip(self.bodies, inertias)),
            gravity=self.gravity,
        )

    def without_gravity(self) -> "ChainModel":
        """Copy of this chain in zero gravity."""
        return ChainModel(name=self.name, bodies=self.bodies, gravity=np.zeros(3))
