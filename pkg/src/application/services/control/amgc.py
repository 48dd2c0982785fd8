"""
Adaptive modular geometric controller.
"""

from typing import Sequence, Tuple

import numpy as np
import numpy.typing as npt

from src.application.interfaces.controllers import ControlOutput
from src.application.services.control.laws import required_wrench_amgc
from src.application.services.control.mgc import ModularGeometricController
from src.application.services.inertia import adapt_step, spd_margin, to_pseudo
from src.config.logging import get_logger
from src.domain.entities.chain_model import ChainModel
from src.domain.entities.gain_set import GainSet
from src.domain.entities.scenario import Scenario
from src.domain.value_objects.controller_type import ControllerType
from src.domain.value_objects.pose import Pose

logger = get_logger(__name__)

Matrix = npt.NDArray[np.float64]
Stack = npt.NDArray[np.float64]

# fraction of the nominal smallest eigenvalue below which an estimate is reported
LOW_MARGIN_FRACTION = 1e-3


class AdaptiveModularGeometricController(ModularGeometricController):
    """Modular controller whose body inertias are estimated online.

    Estimates start at the model's pseudo-inertias, which also serve as the
    nominal values of the leakage term, and move on the SPD cone only.
    """

    def __init__(self, model: ChainModel, gains: GainSet, scenario: Scenario):
        nominal = tuple(to_pseudo(inertia) for inertia in model.inertias)
        if not gains.adaptation.nominal:
            gains = gains.with_adaptation(gains.adaptation.with_nominal(nominal))
        super().__init__(model, gains, scenario)
        self._estimates = [l.copy() for l in nominal]
        self._margin_floor = [LOW_MARGIN_FRACTION * spd_margin(l) for l in nominal]
        self._reported: set[int] = set()

    @property
    def controller_type(self) -> ControllerType:
        return ControllerType.AMGC

    @property
    def estimates(self) -> Tuple[Matrix, ...]:
        return tuple(self._estimates)

    def _required_wrenches(
        self,
        local: Sequence[Pose],
        v_req: Stack,
        a_req: Stack,
        v_actual: Stack,
    ) -> Tuple[Stack, Tuple[Matrix, ...]]:
        return required_wrench_amgc(
            self._estimates,
            self.gains,
            local,
            v_req,
            a_req,
            v_actual,
            self.scenario.tip_wrench,
        )

    def update(self, output: ControlOutput, dt: float) -> None:
        """Move every estimate one adaptation step along its regressor."""
        config = self.gains.adaptation
        self._estimates = [
            adapt_step(l_hat, reg, config, dt, body=i)
            for i, (l_hat, reg) in enumerate(zip(self._estimates, output.regressors))
        ]
        for i, l_hat in enumerate(self._estimates):
            if i in self._reported:
                continue
            margin = spd_margin(l_hat)
            if margin < self._margin_floor[i]:
                self._reported.add(i)
                logger.warning(
                    "Estimate close to the SPD boundary",
                    body=i + 1,
                    min_eigenvalue=margin,
                    floor=self._margin_floor[i],
                )
