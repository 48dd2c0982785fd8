"""
Pose value object.
"""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.domain.exceptions.numerical_error import MalformedElementError

ORTHOGONALITY_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class Pose:
    """Element of SE(3) stored as rotation and translation.

    A pose T = (R, p) maps coordinates in its own frame to the parent frame,
    x_parent = R x + p. Both arrays are stored read-only.
    """

    rotation: npt.NDArray[np.float64]
    translation: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        """Validate shapes and freeze the arrays."""
        rotation = np.array(self.rotation, dtype=float)
        translation = np.array(self.translation, dtype=float).reshape(-1)
        if rotation.shape != (3, 3):
            raise ValueError(f"Rotation must be 3x3, got {rotation.shape}")
        if translation.shape != (3,):
            raise ValueError(f"Translation must have 3 entries, got {translation.shape}")
        rotation.setflags(write=False)
        translation.setflags(write=False)
        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "translation", translation)

    @classmethod
    def identity(cls) -> "Pose":
        """Identity pose."""
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def from_translation(cls, translation: npt.ArrayLike) -> "Pose":
        """Pure translation."""
        return cls(np.eye(3), np.asarray(translation, dtype=float))

    @classmethod
    def from_matrix(
        cls, matrix: npt.ArrayLike, tolerance: float = ORTHOGONALITY_TOLERANCE
    ) -> "Pose":
        """Build a pose from a homogeneous 4x4 matrix, checking its structure."""
        m = np.asarray(matrix, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"Homogeneous matrix must be 4x4, got {m.shape}")
        last_row = np.abs(m[3] - np.array([0.0, 0.0, 0.0, 1.0])).max()
        if last_row > tolerance:
            raise MalformedElementError("SE(3)", float(last_row), tolerance)
        rotation = m[:3, :3]
        orthogonality = np.abs(rotation.T @ rotation - np.eye(3)).max()
        if orthogonality > tolerance:
            raise MalformedElementError("SO(3)", float(orthogonality), tolerance)
        determinant = abs(np.linalg.det(rotation) - 1.0)
        if determinant > tolerance:
            raise MalformedElementError("SO(3)", float(determinant), tolerance)
        return cls(rotation, m[:3, 3])

    @property
    def matrix(self) -> npt.NDArray[np.float64]:
        """Homogeneous 4x4 form."""
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.translation
        return m

    def inverse(self) -> "Pose":
        """Group inverse."""
        rt = self.rotation.T
        return Pose(rt, -rt @ self.translation)

    def apply(self, point: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Map a point from this frame to the parent frame."""
        return self.rotation @ np.asarray(point, dtype=float) + self.translation

    def __matmul__(self, other: "Pose") -> "Pose":
        return Pose(
            self.rotation @ other.rotation,
            self.rotation @ other.translation + self.translation,
        )

    def is_close(self, other: "Pose", tolerance: float = 1e-10) -> bool:
        """Entrywise comparison of the homogeneous forms."""
        return bool(np.abs(self.matrix - other.matrix).max() <= tolerance)

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "rotation": self.rotation.tolist(),
            "translation": self.translation.tolist(),
        }
