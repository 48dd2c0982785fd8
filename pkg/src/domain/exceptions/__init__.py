"""
Domain exceptions package.
"""

from .numerical_error import (
    DivergenceRiskError,
    EstimateDivergenceError,
    InjectivityRadiusError,
    MalformedElementError,
    NumericalError,
    PropertyCheckError,
    RegressorConstructionError,
    SimulationAbortedError,
    SingularMassMatrixError,
)
from .usage_error import ScenarioNotFoundError, UnknownOverrideError, UsageError
from .validation_error import (
    ConfigParseError,
    InvalidFieldError,
    PerturbationError,
    PhysicalInconsistencyError,
    RequiredFieldError,
    ValidationError,
)

__all__ = [
    "NumericalError",
    "MalformedElementError",
    "InjectivityRadiusError",
    "DivergenceRiskError",
    "EstimateDivergenceError",
    "SingularMassMatrixError",
    "RegressorConstructionError",
    "SimulationAbortedError",
    "PropertyCheckError",
    "ValidationError",
    "RequiredFieldError",
    "InvalidFieldError",
    "ConfigParseError",
    "PhysicalInconsistencyError",
    "PerturbationError",
    "UsageError",
    "UnknownOverrideError",
    "ScenarioNotFoundError",
]
