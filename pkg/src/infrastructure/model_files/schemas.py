"""
Configuration document schemas.

A document has three sections: the chain model, the controller gains and
the scenario. Gain matrices accept a scalar (times identity), a diagonal
list or a full matrix.
"""

from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.domain.entities.gain_set import (
    DEFAULT_ADAPTATION_GAIN,
    DEFAULT_LEAKAGE,
)
from src.domain.value_objects.controller_type import ControllerType
from src.domain.value_objects.trajectory_kind import TrajectoryKind

GainValue = Union[float, List[float], List[List[float]]]
DEFAULT_GRAVITY = [0.0, 0.0, -9.81]


def _require_length(values: Optional[List[float]], length: int) -> Optional[List[float]]:
    if values is not None and len(values) != length:
        raise ValueError(f"expected {length} entries, got {len(values)}")
    return values


class StrictSchema(BaseModel):
    """Base schema that rejects unknown fields."""

    model_config = ConfigDict(extra="forbid")


class HomeSchema(StrictSchema):
    """Pose of a body frame relative to its parent at zero joint angle."""

    translation: List[float] = Field(default_factory=lambda: [0.0, 0.0, 0.0])
    rotation: Optional[List[List[float]]] = Field(
        None, description="3x3 rotation matrix; identity when omitted"
    )

    @field_validator("translation")
    @classmethod
    def validate_translation(cls, v):
        return _require_length(v, 3)

    @field_validator("rotation")
    @classmethod
    def validate_rotation(cls, v):
        if v is not None and (len(v) != 3 or any(len(row) != 3 for row in v)):
            raise ValueError("rotation must be 3x3")
        return v


class InertiaSchema(StrictSchema):
    """Inertial parameters about the body frame origin."""

    mass: float = Field(..., gt=0, description="kg")
    first_moment: List[float] = Field(..., description="mass times center of mass, kg m")
    rotational_inertia: Union[List[float], List[List[float]]] = Field(
        ..., description="about the frame origin, kg m^2; diagonal list or 3x3"
    )

    @field_validator("first_moment")
    @classmethod
    def validate_first_moment(cls, v):
        return _require_length(v, 3)


class BodySchema(StrictSchema):
    """One body and the joint attaching it to its parent."""

    name: str = Field(..., min_length=1)
    screw_axis: List[float] = Field(..., description="(angular, linear), body frame")
    home: HomeSchema = Field(default_factory=HomeSchema)
    inertia: InertiaSchema
    rotor_inertia: float = Field(..., gt=0, description="kg m^2")

    @field_validator("screw_axis")
    @classmethod
    def validate_screw_axis(cls, v):
        return _require_length(v, 6)


class ModelSchema(StrictSchema):
    """Serial chain on a fixed base."""

    name: str = Field(..., min_length=1)
    gravity: List[float] = Field(default_factory=lambda: list(DEFAULT_GRAVITY))
    bodies: List[BodySchema] = Field(..., min_length=1)

    @field_validator("gravity")
    @classmethod
    def validate_gravity(cls, v):
        return _require_length(v, 3)


class AdaptationSchema(StrictSchema):
    """Adaptation gain and leakage."""

    gamma: float = Field(DEFAULT_ADAPTATION_GAIN, gt=0)
    sigma: float = Field(DEFAULT_LEAKAGE, ge=0)


class BaselineSchema(StrictSchema):
    """Geometric PD baseline gains; defaults apply to omitted entries."""

    stiffness: Optional[GainValue] = None
    damping: Optional[GainValue] = None


class GainsSchema(StrictSchema):
    """Controller gains; omitted entries take their defaults.

    gamma, k_z and k_a are per body; a list shorter than the chain repeats
    its last entry and a bare scalar applies to every body.
    """

    gamma: Optional[Union[float, List[GainValue]]] = None
    k_z: Optional[Union[float, List[GainValue]]] = None
    k_v: Optional[GainValue] = None
    k_a: Optional[Union[float, List[float]]] = None
    adaptation: AdaptationSchema = Field(default_factory=AdaptationSchema)
    baseline: BaselineSchema = Field(default_factory=BaselineSchema)


class TrajectorySchema(StrictSchema):
    """Desired motion of one joint."""

    kind: TrajectoryKind = TrajectoryKind.SET_POINT
    value: float = 0.0
    coefficients: List[float] = Field(default_factory=list)
    amplitude: float = 0.0
    frequency_hz: float = Field(0.0, ge=0)
    phase: float = 0.0


class ScenarioSchema(StrictSchema):
    """Closed-loop experiment settings."""

    name: str = Field(..., min_length=1)
    controller: ControllerType = ControllerType.MGC
    trajectory: List[TrajectorySchema] = Field(..., min_length=1)
    initial_theta: Optional[List[float]] = Field(
        None, description="rad; the desired angles at t = 0 when omitted"
    )
    initial_theta_dot: Optional[List[float]] = Field(None, description="rad/s; zero when omitted")
    duration: float = Field(10.0, gt=0, description="s")
    control_rate: float = Field(1000.0, gt=0, description="Hz")
    substeps: int = Field(1, ge=1)
    perturbation: float = Field(0.0, ge=0, le=0.5)
    seed: int = 0
    bernoulli_order: int = Field(8, ge=2)
    filter_cutoff_hz: float = Field(100.0, gt=0)
    injectivity_margin: float = Field(0.01, ge=0, lt=2)
    tip_wrench: List[float] = Field(default_factory=lambda: [0.0] * 6)

    @field_validator("tip_wrench")
    @classmethod
    def validate_tip_wrench(cls, v):
        return _require_length(v, 6)


class ConfigDocument(StrictSchema):
    """Complete configuration document."""

    model: ModelSchema
    gains: GainsSchema = Field(default_factory=GainsSchema)
    scenario: ScenarioSchema
