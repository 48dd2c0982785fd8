"""
Controller factory for creating controller instances.
"""

from typing import Dict, Type

from src.application.interfaces.controllers import ControllerInterface
from src.application.services.control.amgc import AdaptiveModularGeometricController
from src.application.services.control.baseline import GeometricPDController
from src.application.services.control.mgc import ModularGeometricController
from src.domain.entities.chain_model import ChainModel
from src.domain.entities.gain_set import GainSet
from src.domain.entities.scenario import Scenario
from src.domain.exceptions.validation_error import InvalidFieldError
from src.domain.value_objects.controller_type import ControllerType


class ControllerFactory:
    """Factory for creating controller instances."""

    def __init__(self):
        self._controllers: Dict[ControllerType, Type[ControllerInterface]] = {
            ControllerType.MGC: ModularGeometricController,
            ControllerType.AMGC: AdaptiveModularGeometricController,
            ControllerType.BASELINE_PD: GeometricPDController,
        }

    def create_controller(
        self,
        controller_type: ControllerType,
        model: ChainModel,
        gains: GainSet,
        scenario: Scenario,
    ) -> ControllerInterface:
        """Create a controller of the specified type."""
        controller_class = self._controllers.get(controller_type)

        if not controller_class:
            raise InvalidFieldError(
                "scenario.controller",
                f"controller type '{controller_type.value}' not supported",
            )

        return controller_class(model, gains, scenario)  # type: ignore[call-arg]

    def get_available_controllers(self) -> list[ControllerType]:
        """Get list of available controller types."""
        return list(self._controllers.keys())

    def register_controller(
        self,
        controller_type: ControllerType,
        controller_class: Type[ControllerInterface],
    ) -> None:
        """Register a new controller type."""
        self._controllers[controller_type] = controller_class

    def has_controller(self, controller_type: ControllerType) -> bool:
        """Check if a controller type is available."""
        return controller_type in self._controllers
