"""
Unit tests for recursive kinematics and dynamics.
"""

import math

import numpy as np
import pytest

from src.application.services.integrator import integrate_hold
from src.application.services.kindyn import (
    body_accelerations,
    body_jacobian,
    body_velocities,
    fk_chain,
    forward_dynamics,
    forward_kinematics,
    gravity_torques,
    inverse_dynamics,
    kinetic_energy,
    mass_matrix,
    potential_energy,
    total_energy,
)
from src.application.services.liegroup import vee6

# Planar arm constants, matching the two_link fixture.
M = 1.0
L1 = 1.0
LC = 0.5
I_C = 1.0 / 12.0 + 0.01
I_M = 0.01
G = 9.81


def lagrangian_terms(q, qd):
    """Mass matrix, velocity product and gravity terms of the planar arm."""
    c2, s2 = math.cos(q[1]), math.sin(q[1])
    m11 = M * LC**2 + I_C + M * (L1**2 + LC**2 + 2.0 * L1 * LC * c2) + I_C + I_M
    m12 = M * (LC**2 + L1 * LC * c2) + I_C
    m22 = M * LC**2 + I_C + I_M
    mass = np.array([[m11, m12], [m12, m22]])
    h = -M * L1 * LC * s2
    coriolis = np.array([h * (2.0 * qd[0] * qd[1] + qd[1] ** 2), -h * qd[0] ** 2])
    gravity = np.array(
        [
            (M * LC + M * L1) * G * math.cos(q[0]) + M * LC * G * math.cos(q[0] + q[1]),
            M * LC * G * math.cos(q[0] + q[1]),
        ]
    )
    return mass, coriolis, gravity


def random_state(rng, n):
    return rng.uniform(-math.pi, math.pi, n), rng.uniform(-2, 2, n), rng.uniform(-3, 3, n)


class TestKinematics:
    """Test forward kinematics and body velocities."""

    def test_planar_positions(self, two_link):
        """Test the second joint sits on the rotated first link."""
        poses = fk_chain(two_link, [0.0, 0.0])
        np.testing.assert_allclose(poses[-1].translation, [1.0, 0.0, 0.0], atol=1e-15)
        poses = fk_chain(two_link, [math.pi / 2, 0.0])
        np.testing.assert_allclose(poses[-1].translation, [0.0, 1.0, 0.0], atol=1e-15)

    def test_planar_orientation(self, two_link):
        """Test the last body turns by the sum of the joint angles."""
        rotation = fk_chain(two_link, [0.4, 0.3])[-1].rotation
        assert math.atan2(rotation[1, 0], rotation[0, 0]) == pytest.approx(0.7)

    def test_body_velocities(self, two_link):
        """Test body twists of the planar arm against hand calculation."""
        velocities = body_velocities(two_link, [0.2, 0.0], [1.0, 2.0])
        np.testing.assert_allclose(velocities[0], [0, 0, 1.0, 0, 0, 0], atol=1e-15)
        # second frame is 1 m out along the first link: linear speed 1 m/s along y
        np.testing.assert_allclose(velocities[1], [0, 0, 3.0, 0, 1.0, 0], atol=1e-14)

    def test_jacobian_matches_velocities(self, generic_4r, rng):
        """Test J_b theta_dot equals the last body twist."""
        model = generic_4r.model
        for _ in range(20):
            theta, theta_dot, _ = random_state(rng, model.n)
            np.testing.assert_allclose(
                body_jacobian(model, theta) @ theta_dot,
                body_velocities(model, theta, theta_dot)[-1],
                atol=1e-12,
            )

    def test_jacobian_matches_finite_differences(self, generic_4r, rng):
        """Test Jacobian columns against finite differences of the tip pose."""
        model = generic_4r.model
        theta = rng.uniform(-1.0, 1.0, model.n)
        tip = fk_chain(model, theta)[-1]
        jacobian = body_jacobian(model, theta)
        h = 1e-6
        for k in range(model.n):
            step = np.zeros(model.n)
            step[k] = h
            derivative = (
                fk_chain(model, theta + step)[-1].matrix
                - fk_chain(model, theta - step)[-1].matrix
            ) / (2.0 * h)
            column = vee6(tip.inverse().matrix @ derivative, tolerance=1e-6)
            np.testing.assert_allclose(column, jacobian[:, k], atol=1e-6)

    def test_accelerations_are_velocity_derivatives(self, generic_4r, rng):
        """Test body accelerations against finite differences of body velocities."""
        model = generic_4r.model
        h = 1e-6
        theta, theta_dot, theta_ddot = random_state(rng, model.n)

        def velocities_at(t):
            return body_velocities(
                model,
                theta + t * theta_dot + 0.5 * t * t * theta_ddot,
                theta_dot + t * theta_ddot,
            )

        numeric = (velocities_at(h) - velocities_at(-h)) / (2.0 * h)
        analytic = body_accelerations(model, theta, theta_dot, theta_ddot)
        np.testing.assert_allclose(analytic, numeric, atol=1e-5 * np.abs(analytic).max())

    def test_forward_kinematics_bundle(self, two_link):
        """Test the one-pass state agrees with the separate functions."""
        state = forward_kinematics(two_link, [0.1, 0.2], [0.3, 0.4], [0.5, 0.6])
        np.testing.assert_allclose(
            state.velocities, body_velocities(two_link, [0.1, 0.2], [0.3, 0.4])
        )
        np.testing.assert_allclose(
            state.accelerations,
            body_accelerations(
                two_link, [0.1, 0.2], [0.3, 0.4], [0.5, 0.6], two_link.base_acceleration
            ),
        )
        assert state.end_effector.is_close(fk_chain(two_link, [0.1, 0.2])[-1])


class TestDynamics:
    """Test inverse and forward dynamics."""

    def test_inverse_dynamics_matches_lagrangian(self, two_link, rng):
        """Test recursive inverse dynamics against the closed-form planar arm."""
        for _ in range(100):
            q, qd, qdd = random_state(rng, 2)
            mass, coriolis, gravity = lagrangian_terms(q, qd)
            expected = mass @ qdd + coriolis + gravity
            actual = inverse_dynamics(two_link, q, qd, qdd)
            np.testing.assert_allclose(actual, expected, rtol=1e-8, atol=1e-8)

    def test_mass_matrix_matches_lagrangian(self, two_link, rng):
        """Test the joint-space inertia includes the rotors."""
        q = rng.uniform(-math.pi, math.pi, 2)
        np.testing.assert_allclose(
            mass_matrix(two_link, q), lagrangian_terms(q, np.zeros(2))[0], atol=1e-12
        )

    def test_mass_matrix_symmetric_positive_definite(self, generic_4r, rng):
        """Test M(theta) is symmetric and positive definite."""
        model = generic_4r.model
        for _ in range(20):
            m = mass_matrix(model, rng.uniform(-math.pi, math.pi, model.n))
            np.testing.assert_allclose(m, m.T, atol=1e-9 * np.abs(m).max())
            assert np.linalg.eigvalsh(0.5 * (m + m.T)).min() > 0.0

    def test_static_gravity_torques(self, two_link):
        """Test holding torques of the planar arm against hand statics."""
        q = np.array([0.3, -0.8])
        np.testing.assert_allclose(
            gravity_torques(two_link, q), lagrangian_terms(q, np.zeros(2))[2], atol=1e-12
        )

    def test_horizontal_arm_torques(self, two_link):
        """Test the outstretched arm needs m g (lc + l1 + lc) at the shoulder."""
        torques = gravity_torques(two_link, [0.0, 0.0])
        np.testing.assert_allclose(torques, [G * (LC + L1 + LC), G * LC], atol=1e-12)

    def test_inverse_forward_round_trip(self, generic_4r, rng):
        """Test forward dynamics inverts inverse dynamics."""
        model = generic_4r.model
        for _ in range(20):
            theta, theta_dot, theta_ddot = random_state(rng, model.n)
            tau = inverse_dynamics(model, theta, theta_dot, theta_ddot)
            np.testing.assert_allclose(
                forward_dynamics(model, theta, theta_dot, tau),
                theta_ddot,
                rtol=1e-8,
                atol=1e-8,
            )

    def test_tip_wrench_maps_through_jacobian(self, generic_4r, rng):
        """Test a tip wrench adds J_b^T w to the joint torques."""
        model = generic_4r.model
        theta, theta_dot, theta_ddot = random_state(rng, model.n)
        wrench = rng.uniform(-100.0, 100.0, 6)
        difference = inverse_dynamics(
            model, theta, theta_dot, theta_ddot, tip_wrench=wrench
        ) - inverse_dynamics(model, theta, theta_dot, theta_ddot)
        np.testing.assert_allclose(
            difference, body_jacobian(model, theta).T @ wrench, atol=1e-8
        )

    def test_without_gravity(self, two_link):
        """Test a resting chain needs no torque in zero gravity."""
        np.testing.assert_allclose(
            inverse_dynamics(two_link, [0.3, 0.2], [0.0, 0.0], [0.0, 0.0], gravity=False),
            np.zeros(2),
            atol=1e-15,
        )


class TestEnergy:
    """Test energy functions."""

    def test_kinetic_energy_quadratic_form(self, generic_4r, rng):
        """Test T = theta_dot^T M theta_dot / 2, rotors included."""
        model = generic_4r.model
        theta, theta_dot, _ = random_state(rng, model.n)
        expected = 0.5 * theta_dot @ mass_matrix(model, theta) @ theta_dot
        assert kinetic_energy(model, theta, theta_dot) == pytest.approx(expected, rel=1e-10)

    def test_potential_energy_planar(self, two_link):
        """Test the potential energy of the planar arm."""
        q = [0.5, 0.4]
        heights = LC * math.sin(q[0]) + L1 * math.sin(q[0]) + LC * math.sin(q[0] + q[1])
        assert potential_energy(two_link, q) == pytest.approx(M * G * heights, rel=1e-12)

    def test_power_balance(self, generic_4r, rng):
        """Test dE/dt = tau^T theta_dot under forward dynamics."""
        model = generic_4r.model
        h = 1e-5
        for _ in range(10):
            theta, theta_dot, _ = random_state(rng, model.n)
            tau = rng.uniform(-1e4, 1e4, model.n)
            theta_ddot = forward_dynamics(model, theta, theta_dot, tau)

            def energy_at(t):
                return total_energy(
                    model,
                    theta + t * theta_dot + 0.5 * t * t * theta_ddot,
                    theta_dot + t * theta_ddot,
                )

            rate = (energy_at(h) - energy_at(-h)) / (2.0 * h)
            power = tau @ theta_dot
            assert rate == pytest.approx(power, rel=1e-5, abs=1e-5 * abs(energy_at(0.0)))

    def test_passive_swing_conserves_energy(self, two_link):
        """Test a passive swing keeps its total energy."""
        theta, theta_dot = np.array([0.3, -0.2]), np.zeros(2)
        zero = np.zeros(2)
        start = total_energy(two_link, theta, theta_dot)

        def accel(q, qd):
            return forward_dynamics(two_link, q, qd, zero)

        for _ in range(500):
            theta, theta_dot = integrate_hold(theta, theta_dot, accel, 1e-3, 1)
        assert total_energy(two_link, theta, theta_dot) == pytest.approx(start, abs=1e-7)
        assert np.abs(theta_dot).max() > 0.1
