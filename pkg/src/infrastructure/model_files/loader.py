"""
Loading, validation and serialization of configuration documents.
"""

import copy
import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import numpy as np
import pydantic

from src.application.services import trajectory
from src.config.logging import get_logger
from src.config.settings import settings
from src.domain.entities.body_module import BodyModule
from src.domain.entities.chain_model import ChainModel
from src.domain.entities.gain_set import (
    DEFAULT_GAMMA,
    DEFAULT_K_A,
    AdaptationConfig,
    BaselineGains,
    GainSet,
    pad_to,
)
from src.domain.entities.scenario import Experiment, JointTrajectory, Scenario
from src.domain.exceptions.numerical_error import MalformedElementError
from src.domain.exceptions.usage_error import (
    ScenarioNotFoundError,
    UnknownOverrideError,
    UsageError,
)
from src.domain.exceptions.validation_error import (
    ConfigParseError,
    InvalidFieldError,
    PhysicalInconsistencyError,
    RequiredFieldError,
)
from src.domain.value_objects.pose import Pose
from src.domain.value_objects.spatial_inertia import SpatialInertia
from src.infrastructure.model_files.schemas import (
    BodySchema,
    ConfigDocument,
    GainValue,
    GainsSchema,
    ModelSchema,
    ScenarioSchema,
)

logger = get_logger(__name__)

BUNDLED_DIR = Path(__file__).parent / "bundled"
INERTIA_FIELDS = {"mass", "first_moment", "rotational_inertia"}

OVERRIDE_PATHS: Dict[str, tuple] = {
    "controller": ("scenario", "controller"),
    "perturbation": ("scenario", "perturbation"),
    "seed": ("scenario", "seed"),
    "duration": ("scenario", "duration"),
    "control_rate": ("scenario", "control_rate"),
    "substeps": ("scenario", "substeps"),
    "bernoulli_order": ("scenario", "bernoulli_order"),
    "filter_cutoff_hz": ("scenario", "filter_cutoff_hz"),
    "gamma": ("gains", "adaptation", "gamma"),
    "sigma": ("gains", "adaptation", "sigma"),
    "k_v": ("gains", "k_v"),
}


def bundled_dir() -> Path:
    """Directory holding the bundled configuration documents."""
    return settings.BUNDLED_SCENARIO_DIR or BUNDLED_DIR


def bundled_names() -> List[str]:
    """Names of the bundled documents."""
    return sorted(path.stem for path in bundled_dir().glob("*.json"))


def resolve_reference(reference: Union[str, Path]) -> Path:
    """Path of a document given as a file path or a bundled name."""
    path = Path(reference)
    if path.is_file():
        return path
    candidate = bundled_dir() / f"{reference}.json"
    if candidate.is_file():
        return candidate
    raise ScenarioNotFoundError(str(reference))


def read_document(path: Path) -> Dict[str, Any]:
    """Parse a JSON document, reporting syntax errors by line and column."""
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigParseError(str(path), exc.lineno, exc.colno, exc.msg) from exc
    if not isinstance(data, dict):
        raise ConfigParseError(str(path), 1, 1, "top level must be an object")
    return data


def parse_overrides(items: Sequence[str]) -> Dict[str, str]:
    """Split key=value arguments."""
    overrides = {}
    for item in items:
        key, separator, value = item.partition("=")
        if not separator or not key.strip():
            raise UsageError(f"Override '{item}' is not of the form key=value")
        overrides[key.strip()] = value.strip()
    return overrides


def _parse_value(raw: Any) -> Any:
    if not isinstance(raw, str):
        return raw
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_overrides(document: Dict[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """Copy of document with override keys written to their fields."""
    unknown = [key for key in overrides if key not in OVERRIDE_PATHS]
    if unknown:
        raise UnknownOverrideError(unknown[0], list(OVERRIDE_PATHS))
    result = copy.deepcopy(document)
    for key, raw in overrides.items():
        *parents, leaf = OVERRIDE_PATHS[key]
        node = result
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = _parse_value(raw)
    return result


def validate_document(data: Mapping[str, Any]) -> ConfigDocument:
    """Validate raw data, naming the dotted path of the first offending field."""
    try:
        return ConfigDocument.model_validate(data)
    except pydantic.ValidationError as exc:
        error = exc.errors()[0]
        path = ".".join(str(part) for part in error["loc"])
        if error["type"] == "missing":
            raise RequiredFieldError(path) from exc
        raise InvalidFieldError(path, error["msg"]) from exc


def gain_matrix(value: GainValue, size: int, path: str) -> np.ndarray:
    """Scalar (times identity), diagonal list or full matrix."""
    if isinstance(value, (int, float)):
        return float(value) * np.eye(size)
    array = np.array(value, dtype=float)
    if array.shape == (size,):
        return np.diag(array)
    if array.shape == (size, size):
        return array
    raise InvalidFieldError(
        path, f"expected a scalar, {size} diagonal entries or a {size}x{size} matrix"
    )


def _per_body(value: Any, n: int) -> List[Any]:
    entries = value if isinstance(value, list) else [value]
    return [entries[min(i, len(entries) - 1)] for i in range(n)]


def build_body(schema: BodySchema, index: int) -> BodyModule:
    """Body module from its schema."""
    path = f"model.bodies.{index}"
    rotation = np.eye(3) if schema.home.rotation is None else schema.home.rotation
    try:
        home = Pose.from_matrix(
            np.block(
                [
                    [np.asarray(rotation, dtype=float), np.c_[schema.home.translation]],
                    [np.zeros((1, 3)), np.ones((1, 1))],
                ]
            )
        )
    except (MalformedElementError, ValueError) as exc:
        raise InvalidFieldError(f"{path}.home.rotation", str(exc)) from exc

    inertia_value = np.array(schema.inertia.rotational_inertia, dtype=float)
    if inertia_value.shape == (3,):
        inertia_value = np.diag(inertia_value)
    try:
        inertia = SpatialInertia(
            mass=schema.inertia.mass,
            first_moment=np.array(schema.inertia.first_moment),
            rotational_inertia=inertia_value,
        )
        return BodyModule(
            name=schema.name,
            screw_axis=np.array(schema.screw_axis),
            home=home,
            inertia=inertia,
            rotor_inertia=schema.rotor_inertia,
        )
    except InvalidFieldError as exc:
        section = "inertia." if exc.field_name in INERTIA_FIELDS else ""
        raise InvalidFieldError(f"{path}.{section}{exc.field_name}", exc.message) from exc
    except PhysicalInconsistencyError as exc:
        raise PhysicalInconsistencyError(f"{path}.inertia: {exc}") from exc


def build_model(schema: ModelSchema) -> ChainModel:
    """Chain model from its schema."""
    bodies = tuple(build_body(body, i) for i, body in enumerate(schema.bodies))
    return ChainModel(name=schema.name, bodies=bodies, gravity=np.array(schema.gravity))


def build_gains(schema: GainsSchema, n: int) -> GainSet:
    """Gain set for an n-body chain from its schema."""
    defaults = GainSet.defaults(n)
    k_v = defaults.k_v if schema.k_v is None else gain_matrix(schema.k_v, 6, "gains.k_v")
    gamma_values = pad_to(DEFAULT_GAMMA, n) if schema.gamma is None else _per_body(schema.gamma, n)
    gamma = tuple(
        gain_matrix(value, 6, f"gains.gamma.{i}") for i, value in enumerate(gamma_values)
    )
    if schema.k_z is None:
        k_z = tuple(GainSet.default_k_z(g, k_v) for g in gamma)
    else:
        k_z = tuple(
            gain_matrix(value, 6, f"gains.k_z.{i}")
            for i, value in enumerate(_per_body(schema.k_z, n))
        )
    k_a = pad_to(DEFAULT_K_A, n) if schema.k_a is None else _per_body(schema.k_a, n)

    baseline_defaults = BaselineGains.defaults()
    baseline = BaselineGains(
        stiffness=baseline_defaults.stiffness
        if schema.baseline.stiffness is None
        else gain_matrix(schema.baseline.stiffness, 6, "gains.baseline.stiffness"),
        damping=baseline_defaults.damping
        if schema.baseline.damping is None
        else gain_matrix(schema.baseline.damping, 6, "gains.baseline.damping"),
    )
    return GainSet(
        gamma=gamma,
        k_z=k_z,
        k_v=k_v,
        k_a=np.array(k_a, dtype=float),
        adaptation=AdaptationConfig(
            gamma=schema.adaptation.gamma, sigma=schema.adaptation.sigma
        ),
        baseline=baseline,
    )


def build_scenario(schema: ScenarioSchema, model_name: str) -> Scenario:
    """Scenario from its schema."""
    entries = []
    for i, entry in enumerate(schema.trajectory):
        try:
            entries.append(
                JointTrajectory(
                    kind=entry.kind,
                    value=entry.value,
                    coefficients=tuple(entry.coefficients),
                    amplitude=entry.amplitude,
                    frequency_hz=entry.frequency_hz,
                    phase=entry.phase,
                )
            )
        except InvalidFieldError as exc:
            raise InvalidFieldError(
                f"scenario.trajectory.{i}.{exc.field_name}", exc.message
            ) from exc
    trajectories = tuple(entries)
    n = len(trajectories)
    if schema.initial_theta is None:
        initial_theta = trajectory.evaluate(trajectories, 0.0)[0]
    else:
        initial_theta = np.array(schema.initial_theta, dtype=float)
    if schema.initial_theta_dot is None:
        initial_theta_dot = np.zeros(n)
    else:
        initial_theta_dot = np.array(schema.initial_theta_dot, dtype=float)
    return Scenario(
        name=schema.name,
        model=model_name,
        controller=schema.controller,
        trajectories=trajectories,
        initial_theta=initial_theta,
        initial_theta_dot=initial_theta_dot,
        duration=schema.duration,
        control_rate=schema.control_rate,
        substeps=schema.substeps,
        perturbation=schema.perturbation,
        seed=schema.seed,
        bernoulli_order=schema.bernoulli_order,
        filter_cutoff_hz=schema.filter_cutoff_hz,
        injectivity_margin=schema.injectivity_margin,
        tip_wrench=np.array(schema.tip_wrench, dtype=float),
    )


def build_experiment(document: ConfigDocument) -> Experiment:
    """Domain entities of a validated document."""
    model = build_model(document.model)
    gains = build_gains(document.gains, model.n)
    scenario = build_scenario(document.scenario, model.name)
    return Experiment(model=model, gains=gains, scenario=scenario)


def load_experiment(
    reference: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None
) -> Experiment:
    """Load, override, validate and build a configuration document."""
    path = resolve_reference(reference)
    data = read_document(path)
    if overrides:
        data = apply_overrides(data, overrides)
    experiment = build_experiment(validate_document(data))
    logger.info(
        "Model loaded",
        source=str(path),
        model=experiment.model.name,
        bodies=experiment.model.n,
        total_mass=experiment.model.total_mass,
        controller=experiment.scenario.controller.value,
    )
    return experiment


def load_model(reference: Union[str, Path]) -> ChainModel:
    """Chain model of a configuration document."""
    return load_experiment(reference).model


def _matrix(value: np.ndarray) -> List[Any]:
    return np.asarray(value, dtype=float).tolist()


def dump_config(experiment: Experiment) -> Dict[str, Any]:
    """Canonical document of an experiment; loading it rebuilds the same entities."""
    model, gains, scenario = experiment.model, experiment.gains, experiment.scenario
    return {
        "model": {
            "name": model.name,
            "gravity": _matrix(model.gravity),
            "bodies": [
                {
                    "name": body.name,
                    "screw_axis": _matrix(body.screw_axis),
                    "home": {
                        "translation": _matrix(body.home.translation),
                        "rotation": _matrix(body.home.rotation),
                    },
                    "inertia": {
                        "mass": body.inertia.mass,
                        "first_moment": _matrix(body.inertia.first_moment),
                        "rotational_inertia": _matrix(body.inertia.rotational_inertia),
                    },
                    "rotor_inertia": float(body.rotor_inertia),
                }
                for body in model.bodies
            ],
        },
        "gains": {
            "gamma": [_matrix(g) for g in gains.gamma],
            "k_z": [_matrix(k) for k in gains.k_z],
            "k_v": _matrix(gains.k_v),
            "k_a": _matrix(gains.k_a),
            "adaptation": {
                "gamma": gains.adaptation.gamma,
                "sigma": gains.adaptation.sigma,
            },
            "baseline": {
                "stiffness": _matrix(gains.baseline.stiffness),
                "damping": _matrix(gains.baseline.damping),
            },
        },
        "scenario": {
            "name": scenario.name,
            "controller": scenario.controller.value,
            "trajectory": [
                {
                    "kind": entry.kind.value,
                    "value": entry.value,
                    "coefficients": list(entry.coefficients),
                    "amplitude": entry.amplitude,
                    "frequency_hz": entry.frequency_hz,
                    "phase": entry.phase,
                }
                for entry in scenario.trajectories
            ],
            "initial_theta": _matrix(scenario.initial_theta),
            "initial_theta_dot": _matrix(scenario.initial_theta_dot),
            "duration": scenario.duration,
            "control_rate": scenario.control_rate,
            "substeps": scenario.substeps,
            "perturbation": scenario.perturbation,
            "seed": scenario.seed,
            "bernoulli_order": scenario.bernoulli_order,
            "filter_cutoff_hz": scenario.filter_cutoff_hz,
            "injectivity_margin": scenario.injectivity_margin,
            "tip_wrench": _matrix(scenario.tip_wrench),
        },
    }


def config_schema() -> Dict[str, Any]:
    """JSON schema of the configuration document."""
    return ConfigDocument.model_json_schema()
