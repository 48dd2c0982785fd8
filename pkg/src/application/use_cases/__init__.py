"""
Use cases package.

This package contains the use cases that orchestrate the kinematics,
dynamics and control services into runs, comparisons and property checks.
"""

from .check_properties import CheckPropertiesUseCase, PropertyResult
from .compare_scenarios import CompareScenariosUseCase
from .run_scenario import RunResult, RunScenarioUseCase

__all__ = [
    "CheckPropertiesUseCase",
    "CompareScenariosUseCase",
    "PropertyResult",
    "RunResult",
    "RunScenarioUseCase",
]
