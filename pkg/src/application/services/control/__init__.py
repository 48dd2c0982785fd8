"""
Controllers and their diagnostics.
"""

from .amgc import AdaptiveModularGeometricController
from .baseline import GeometricPDController
from .factory import ControllerFactory
from .mgc import ModularGeometricController

__all__ = [
    "AdaptiveModularGeometricController",
    "ControllerFactory",
    "GeometricPDController",
    "ModularGeometricController",
]
