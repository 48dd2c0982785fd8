"""
Domain entities package.
"""

from .body_module import BodyModule
from .chain_model import ChainModel
from .gain_set import AdaptationConfig, BaselineGains, GainSet
from .scenario import Experiment, JointTrajectory, Scenario
from .trace import RunSummary, Trace

__all__ = [
    "AdaptationConfig",
    "BaselineGains",
    "BodyModule",
    "ChainModel",
    "Experiment",
    "GainSet",
    "JointTrajectory",
    "RunSummary",
    "Scenario",
    "Trace",
]
