"""
Domain value objects package.
"""

from .controller_type import ControllerType
from .pose import Pose
from .spatial import Twist, Wrench
from .spatial_inertia import SpatialInertia
from .trajectory_kind import TrajectoryKind

__all__ = [
    "ControllerType",
    "Pose",
    "SpatialInertia",
    "TrajectoryKind",
    "Twist",
    "Wrench",
]
