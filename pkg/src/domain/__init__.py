"""
Domain package.
"""

from .entities import *
from .exceptions import *
from .value_objects import *

__all__ = [
    # Entities
    "BodyModule",
    "ChainModel",
    "Experiment",
    "GainSet",
    "Scenario",
    "Trace",
    # Exceptions
    "NumericalError",
    "UsageError",
    "ValidationError",
    # Value Objects
    "ControllerType",
    "Pose",
    "SpatialInertia",
    "TrajectoryKind",
]
