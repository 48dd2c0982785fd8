"""
Controlled perturbation of inertial parameters.
"""

import numpy as np
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from src.application.services.inertia import to_pseudo
from src.config.logging import get_logger
from src.domain.entities.chain_model import ChainModel
from src.domain.entities.scenario import MAX_PERTURBATION
from src.domain.exceptions.validation_error import (
    InvalidFieldError,
    PerturbationError,
    PhysicalInconsistencyError,
)
from src.domain.value_objects.spatial_inertia import SpatialInertia

logger = get_logger(__name__)

MAX_ATTEMPTS = 100


def _draw(
    inertia: SpatialInertia, fraction: float, rng: np.random.Generator
) -> SpatialInertia:
    factors = rng.uniform(1.0 - fraction, 1.0 + fraction, size=3)
    candidate = inertia.scaled(*factors)
    to_pseudo(candidate)
    return candidate


def perturb_inertias(model: ChainModel, fraction: float, seed: int) -> ChainModel:
    """Scale each body's mass, first moment and rotational inertia independently.

    Factors are uniform in [1 - fraction, 1 + fraction] and drawn from a
    generator seeded with seed, so equal arguments give bitwise-equal models.
    A draw that is not physically consistent is redrawn.
    """
    if not 0.0 <= fraction <= MAX_PERTURBATION:
        raise InvalidFieldError(
            "perturbation", f"must be in [0, {MAX_PERTURBATION}], got {fraction}"
        )
    if fraction == 0.0:
        return model

    rng = np.random.default_rng(seed)
    perturbed = []
    total_attempts = 0
    for index, inertia in enumerate(model.inertias):
        retrying = Retrying(
            stop=stop_after_attempt(MAX_ATTEMPTS),
            retry=retry_if_exception_type(PhysicalInconsistencyError),
        )
        try:
            candidate = retrying(_draw, inertia, fraction, rng)
        except RetryError as exc:
            raise PerturbationError(index + 1, MAX_ATTEMPTS) from exc
        total_attempts += retrying.statistics.get("attempt_number", 1)
        perturbed.append(candidate)

    logger.info(
        "Inertias perturbed",
        model=model.name,
        fraction=fraction,
        seed=seed,
        draws=total_attempts,
    )
    return model.with_inertias(perturbed)
