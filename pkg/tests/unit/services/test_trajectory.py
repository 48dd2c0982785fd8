"""
Unit tests for desired trajectories and the fixed-step integrator.
"""

import math

import numpy as np
import pytest

from src.application.services.integrator import integrate_hold, is_finite_state, rk4_step
from src.application.services.trajectory import evaluate, evaluate_joint
from src.domain.entities.scenario import JointTrajectory
from src.domain.exceptions.validation_error import InvalidFieldError
from src.domain.value_objects.trajectory_kind import TrajectoryKind


class TestTrajectory:
    """Test desired joint motion."""

    def test_set_point(self):
        """Test a set-point has zero rate and acceleration."""
        assert evaluate_joint(JointTrajectory.set_point(0.4), 3.0) == (0.4, 0.0, 0.0)

    def test_polynomial(self):
        """Test polynomial angle, rate and acceleration."""
        entry = JointTrajectory(kind=TrajectoryKind.POLYNOMIAL, coefficients=(1.0, 2.0, 3.0))
        theta, theta_dot, theta_ddot = evaluate_joint(entry, 2.0)
        assert theta == pytest.approx(1.0 + 4.0 + 12.0)
        assert theta_dot == pytest.approx(2.0 + 12.0)
        assert theta_ddot == pytest.approx(6.0)

    def test_sinusoid(self):
        """Test sinusoid derivatives."""
        entry = JointTrajectory(
            kind=TrajectoryKind.SINUSOID, value=0.1, amplitude=0.5, frequency_hz=0.25
        )
        omega = 2.0 * math.pi * 0.25
        theta, theta_dot, theta_ddot = evaluate_joint(entry, 1.0)
        assert theta == pytest.approx(0.1 + 0.5 * math.sin(omega))
        assert theta_dot == pytest.approx(0.5 * omega * math.cos(omega))
        assert theta_ddot == pytest.approx(-0.5 * omega**2 * math.sin(omega))

    def test_chain_evaluation(self):
        """Test evaluate stacks per-joint values."""
        entries = (
            JointTrajectory.set_point(1.0),
            JointTrajectory(kind=TrajectoryKind.POLYNOMIAL, coefficients=(0.0, 1.0)),
        )
        theta, theta_dot, theta_ddot = evaluate(entries, 0.5)
        np.testing.assert_allclose(theta, [1.0, 0.5])
        np.testing.assert_allclose(theta_dot, [0.0, 1.0])
        np.testing.assert_allclose(theta_ddot, [0.0, 0.0])

    def test_polynomial_requires_coefficients(self):
        """Test an empty polynomial is rejected."""
        with pytest.raises(InvalidFieldError):
            JointTrajectory(kind=TrajectoryKind.POLYNOMIAL)

    def test_negative_frequency_rejected(self):
        """Test a negative sinusoid frequency is rejected."""
        with pytest.raises(InvalidFieldError):
            JointTrajectory(kind=TrajectoryKind.SINUSOID, frequency_hz=-1.0)


class TestIntegrator:
    """Test RK4 integration."""

    def test_harmonic_oscillator(self):
        """Test RK4 follows cos(t) for theta'' = -theta."""
        theta, theta_dot = np.array([1.0]), np.array([0.0])

        def accel(q, qd):
            return -q

        for _ in range(1000):
            theta, theta_dot = integrate_hold(theta, theta_dot, accel, 1e-3, 1)
        assert theta[0] == pytest.approx(math.cos(1.0), abs=1e-12)
        assert theta_dot[0] == pytest.approx(-math.sin(1.0), abs=1e-12)

    def test_substeps_split_period(self):
        """Test substeps equal repeated RK4 steps of dt / substeps."""

        def accel(q, qd):
            return -q - 0.1 * qd

        theta, theta_dot = np.array([0.3]), np.array([0.1])
        expected = (theta, theta_dot)
        for _ in range(4):
            expected = rk4_step(*expected, accel, 1e-2 / 4)
        actual = integrate_hold(theta, theta_dot, accel, 1e-2, 4)
        np.testing.assert_array_equal(actual[0], expected[0])
        np.testing.assert_array_equal(actual[1], expected[1])

    def test_fourth_order_convergence(self):
        """Test halving the step divides the error by about 16."""

        def accel(q, qd):
            return -q

        errors = []
        for h in (0.1, 0.05):
            theta, theta_dot = np.array([1.0]), np.array([0.0])
            for _ in range(int(round(1.0 / h))):
                theta, theta_dot = rk4_step(theta, theta_dot, accel, h)
            errors.append(abs(theta[0] - math.cos(1.0)))
        assert 12.0 < errors[0] / errors[1] < 20.0

    def test_finite_state(self):
        """Test non-finite states are detected."""
        assert is_finite_state(np.zeros(2), np.ones(2))
        assert not is_finite_state(np.array([0.0, np.nan]), np.ones(2))
        assert not is_finite_state(np.zeros(2), np.array([np.inf, 0.0]))
