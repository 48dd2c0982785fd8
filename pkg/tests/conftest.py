"""
Pytest configuration and fixtures.
"""

import numpy as np
import pytest

from src.config.settings import Settings
from src.domain.entities.body_module import BodyModule
from src.domain.entities.chain_model import ChainModel
from src.domain.entities.gain_set import AdaptationConfig, BaselineGains, GainSet
from src.domain.entities.scenario import Experiment, JointTrajectory, Scenario
from src.domain.value_objects.controller_type import ControllerType
from src.domain.value_objects.pose import Pose
from src.domain.value_objects.spatial_inertia import SpatialInertia
from src.infrastructure.model_files.loader import load_experiment

# Two-link planar arm: unit masses and lengths, slender links with a small
# thickness, centers of mass at mid-link, joints about z, gravity along -y.
LINK_MASS = 1.0
LINK_LENGTH = 1.0
LINK_COM = 0.5
LINK_CENTROIDAL_INERTIA = 1.0 / 12.0 + 0.01
ROTOR_INERTIA = 0.01
GRAVITY = 9.81


def planar_link(name: str, offset: float) -> BodyModule:
    """One link of the planar test arm, attached offset meters along its parent's x."""
    about_origin = LINK_CENTROIDAL_INERTIA + LINK_MASS * LINK_COM**2
    return BodyModule(
        name=name,
        screw_axis=np.array([0.0, 0.0, 1.0, 0.0, 0.0, 0.0]),
        home=Pose.from_translation([offset, 0.0, 0.0]),
        inertia=SpatialInertia(
            mass=LINK_MASS,
            first_moment=np.array([LINK_MASS * LINK_COM, 0.0, 0.0]),
            rotational_inertia=np.diag([0.01, about_origin, about_origin]),
        ),
        rotor_inertia=ROTOR_INERTIA,
    )


def planar_gains(n: int = 2) -> GainSet:
    """Small gains that keep the planar arm stable at 1 kHz."""
    gamma = [5.0 * np.eye(6)] * n
    k_v = 20.0 * np.eye(6)
    return GainSet(
        gamma=tuple(gamma),
        k_z=tuple(GainSet.default_k_z(g, k_v) for g in gamma),
        k_v=k_v,
        k_a=np.full(n, 5.0),
        adaptation=AdaptationConfig(gamma=50.0, sigma=0.1),
        baseline=BaselineGains(
            stiffness=np.diag([50.0] * 3 + [100.0] * 3), damping=20.0 * np.eye(6)
        ),
    )


def planar_experiment(
    controller: ControllerType = ControllerType.MGC,
    target=(0.6, 0.9),
    initial=(0.3, 0.6),
    duration: float = 0.2,
    **changes,
) -> Experiment:
    """Set-point experiment on the planar arm."""
    model = ChainModel(
        name="two_link",
        bodies=(planar_link("upper_link", 0.0), planar_link("lower_link", LINK_LENGTH)),
        gravity=np.array([0.0, -GRAVITY, 0.0]),
    )
    scenario = Scenario(
        name="two_link_set_point",
        model=model.name,
        controller=controller,
        trajectories=tuple(JointTrajectory.set_point(value) for value in target),
        initial_theta=np.array(initial, dtype=float),
        initial_theta_dot=np.zeros(2),
        duration=duration,
        **changes,
    )
    return Experiment(model=model, gains=planar_gains(), scenario=scenario)


@pytest.fixture(scope="session")
def test_settings():
    """Test settings configuration."""
    return Settings(ENVIRONMENT="test", LOG_LEVEL="DEBUG", WORKER_CONCURRENCY=1)


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(12345)


@pytest.fixture
def two_link():
    """Planar two-link arm with rotors."""
    return planar_experiment().model


@pytest.fixture
def two_link_experiment():
    """Short MGC set-point run on the planar arm."""
    return planar_experiment()


@pytest.fixture(scope="session")
def generic_4r():
    """Bundled generic four-body chain and its MGC scenario."""
    return load_experiment("4r_generic_mgc")


@pytest.fixture
def random_pseudo(rng):
    """Factory of random positive definite 4x4 matrices."""

    def make() -> np.ndarray:
        a = rng.standard_normal((4, 4))
        return a @ a.T + 0.5 * np.eye(4)

    return make


@pytest.fixture
def make_planar_experiment():
    """Factory of planar-arm experiments with keyword overrides."""
    return planar_experiment
