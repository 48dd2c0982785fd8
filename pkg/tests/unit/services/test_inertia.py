"""
Unit tests for the pseudo-inertia manifold services.
"""

import numpy as np
import pytest

from src.application.services.inertia import (
    adapt_step,
    adaptation_rate,
    bregman_divergence,
    bregman_divergence_spectral,
    check_pseudo,
    fit_divergence_bound,
    from_pseudo,
    geodesic_distance,
    metric_inner,
    phi,
    phi_inverse,
    regressor,
    spatial_matrix_from_pseudo,
    spd_margin,
    to_pseudo,
)
from src.application.services.liegroup import coad
from src.domain.entities.gain_set import AdaptationConfig
from src.domain.exceptions.numerical_error import EstimateDivergenceError, NumericalError
from src.domain.exceptions.validation_error import (
    InvalidFieldError,
    PhysicalInconsistencyError,
)
from src.domain.value_objects.spatial_inertia import SpatialInertia


def random_symmetric(rng) -> np.ndarray:
    a = rng.standard_normal((4, 4))
    return 0.5 * (a + a.T)


class TestPseudoInertia:
    """Test the map between spatial inertias and pseudo-inertias."""

    def test_known_body(self):
        """Test the pseudo-inertia of a unit point mass at the origin plus a small inertia."""
        inertia = SpatialInertia(1.0, np.zeros(3), np.diag([0.2, 0.2, 0.2]))
        l = to_pseudo(inertia)
        np.testing.assert_allclose(l[:3, :3], 0.1 * np.eye(3))
        np.testing.assert_allclose(l[:3, 3], np.zeros(3))
        assert l[3, 3] == 1.0

    def test_round_trip(self, random_pseudo):
        """Test to_pseudo(from_pseudo(L)) == L."""
        for _ in range(20):
            l = random_pseudo()
            np.testing.assert_allclose(to_pseudo(from_pseudo(l)), l, atol=1e-12)

    def test_linear_map_agrees_on_cone(self, random_pseudo):
        """Test spatial_matrix_from_pseudo equals the checked conversion."""
        l = random_pseudo()
        np.testing.assert_allclose(
            spatial_matrix_from_pseudo(l), from_pseudo(l).matrix, atol=1e-12
        )

    def test_identity_pseudo_inertia(self):
        """Test the identity pseudo-inertia maps to unit mass with I_A = 2 I."""
        inertia = from_pseudo(np.eye(4))
        assert inertia.mass == 1.0
        np.testing.assert_array_equal(inertia.first_moment, np.zeros(3))
        np.testing.assert_allclose(inertia.rotational_inertia, 2.0 * np.eye(3))

    def test_rejects_triangle_violation(self):
        """Test a body violating the triangle inequality is not physical."""
        inertia = SpatialInertia(1.0, np.zeros(3), np.diag([1.0, 1.0, 3.0]))
        with pytest.raises(PhysicalInconsistencyError):
            to_pseudo(inertia)

    def test_rejects_asymmetric(self):
        """Test a non-symmetric matrix is rejected."""
        l = np.eye(4)
        l[0, 1] = 0.5
        with pytest.raises(PhysicalInconsistencyError):
            check_pseudo(l)

    def test_rejects_wrong_shape(self):
        """Test a matrix that is not 4x4 is rejected."""
        with pytest.raises(PhysicalInconsistencyError):
            check_pseudo(np.eye(3))


class TestMetricAndDivergence:
    """Test the affine-invariant metric and the log-det divergence."""

    def test_affine_invariance(self, rng, random_pseudo):
        """Test <AXA^T, AYA^T> at ALA^T equals <X, Y> at L."""
        for _ in range(20):
            l = random_pseudo()
            x, y = random_symmetric(rng), random_symmetric(rng)
            q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
            a = q * rng.uniform(0.5, 2.0, 4)
            base = metric_inner(l, x, y)
            moved = metric_inner(a @ l @ a.T, a @ x @ a.T, a @ y @ a.T)
            assert moved == pytest.approx(base, rel=1e-9, abs=1e-12)

    def test_dual_formula(self, random_pseudo):
        """Test the determinant and eigenvalue forms agree."""
        for _ in range(20):
            l, l_hat = random_pseudo(), random_pseudo()
            assert bregman_divergence_spectral(l, l_hat, 2.0) == pytest.approx(
                bregman_divergence(l, l_hat, 2.0), rel=1e-10, abs=1e-12
            )

    def test_non_negative(self, random_pseudo):
        """Test the divergence is non-negative and zero on the diagonal."""
        for _ in range(20):
            l, l_hat = random_pseudo(), random_pseudo()
            assert bregman_divergence(l, l_hat, 1.0) >= -1e-12
        l = random_pseudo()
        assert bregman_divergence(l, l, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_scales_with_gamma(self, random_pseudo):
        """Test the divergence is linear in gamma."""
        l, l_hat = random_pseudo(), random_pseudo()
        assert bregman_divergence(l, l_hat, 3.0) == pytest.approx(
            3.0 * bregman_divergence(l, l_hat, 1.0)
        )

    def test_geodesic_distance_symmetric(self, random_pseudo):
        """Test the geodesic distance is symmetric and zero on the diagonal."""
        for _ in range(20):
            a, b = random_pseudo(), random_pseudo()
            assert geodesic_distance(a, b) == pytest.approx(geodesic_distance(b, a), rel=1e-10)
        a = random_pseudo()
        assert geodesic_distance(a, a) == pytest.approx(0.0, abs=1e-7)

    def test_fit_divergence_bound_is_finite(self, rng, random_pseudo):
        """Test a finite constant bounds the divergence over a compact sample set."""
        nominal = random_pseudo()
        samples = []
        for _ in range(30):
            a, b = random_symmetric(rng), random_symmetric(rng)
            l = nominal + 0.1 * a @ a.T
            l_hat = nominal + 0.1 * b @ b.T
            samples.append((l, l_hat, nominal))
        bound = fit_divergence_bound(samples)
        assert 0.0 < bound < np.inf
        for l, l_hat, l0 in samples:
            d_hat, d_true = l_hat - l0, l - l0
            scale = metric_inner(l_hat, d_hat, d_hat) + metric_inner(l_hat, d_true, d_true)
            assert bregman_divergence(l, l_hat, 1.0) <= bound * scale * (1.0 + 1e-12)


class TestPhi:
    """Test the scalar divergence profile."""

    def test_phi_zero_only_at_one(self):
        """Test phi vanishes at 1 and is positive elsewhere."""
        assert float(phi(1.0)) == 0.0
        assert np.all(phi(np.array([0.5, 2.0, 10.0])) > 0.0)

    def test_phi_inverse_upper_branch(self):
        """Test phi_inverse returns the root at or above 1."""
        for value in [0.0, 1e-6, 0.5, 3.0, 20.0]:
            lam = phi_inverse(value)
            assert lam >= 1.0
            assert float(phi(lam)) == pytest.approx(value, abs=1e-10 * max(1.0, value))

    def test_phi_inverse_rejects_negative(self):
        """Test negative values have no preimage."""
        with pytest.raises(ValueError):
            phi_inverse(-0.1)


class TestRegressor:
    """Test the symmetric regressor."""

    def test_trace_identity(self, rng, random_pseudo):
        """Test tr(L R) equals the direct 6-D power expression."""
        for _ in range(100):
            l = random_pseudo()
            m = spatial_matrix_from_pseudo(l)
            v_ref, a_ref, v_body = rng.standard_normal((3, 6))
            v_err = v_ref - v_body
            direct = v_err @ (m @ a_ref - coad(v_body, m @ v_ref))
            traced = np.trace(l @ regressor(v_err, v_ref, a_ref, v_body))
            assert traced == pytest.approx(direct, rel=1e-8, abs=1e-8)

    def test_symmetric(self, rng):
        """Test the regressor is symmetric."""
        reg = regressor(*rng.standard_normal((4, 6)))
        np.testing.assert_allclose(reg, reg.T, atol=0.0)

    def test_zero_error_gives_zero(self, rng):
        """Test a zero velocity error produces a zero regressor."""
        v_ref, a_ref, v_body = rng.standard_normal((3, 6))
        np.testing.assert_allclose(
            regressor(np.zeros(6), v_ref, a_ref, v_body), np.zeros((4, 4)), atol=1e-14
        )


class TestAdaptation:
    """Test the estimate update on the SPD cone."""

    def test_rate_without_leakage(self, rng, random_pseudo):
        """Test the rate is L R L / gamma when sigma is zero."""
        l_hat, reg = random_pseudo(), random_symmetric(rng)
        config = AdaptationConfig(gamma=4.0, sigma=0.0)
        np.testing.assert_allclose(
            adaptation_rate(l_hat, reg, config, 0), l_hat @ reg @ l_hat / 4.0
        )

    def test_leakage_pulls_to_nominal(self, random_pseudo):
        """Test a zero regressor moves the estimate toward its nominal value."""
        nominal, l_hat = random_pseudo(), random_pseudo()
        config = AdaptationConfig(gamma=1.0, sigma=1.0, nominal=(nominal,))
        before = np.linalg.norm(l_hat - nominal)
        updated = adapt_step(l_hat, np.zeros((4, 4)), config, 1e-2, body=0)
        assert np.linalg.norm(updated - nominal) < before

    def test_missing_nominal_raises(self, random_pseudo):
        """Test leakage without a nominal bound for the body is rejected."""
        config = AdaptationConfig(gamma=1.0, sigma=0.5)
        with pytest.raises(InvalidFieldError):
            adaptation_rate(random_pseudo(), np.zeros((4, 4)), config, 0)

    def test_stays_positive_definite(self, rng, random_pseudo):
        """Test large steps keep the estimate positive definite."""
        config = AdaptationConfig(gamma=1.0, sigma=0.0)
        l_hat = random_pseudo()
        reg = -50.0 * np.eye(4)
        for _ in range(20):
            l_hat = adapt_step(l_hat, reg, config, 1e-2, body=0)
            assert spd_margin(l_hat) > 0.0
            np.testing.assert_array_equal(l_hat, l_hat.T)

    def test_retraction_matches_euler_to_second_order(self, rng, random_pseudo):
        """Test the retraction differs from an Euler step by O(dt^2)."""
        config = AdaptationConfig(gamma=2.0, sigma=0.0)
        l_hat, reg = random_pseudo(), random_symmetric(rng)
        gaps = []
        for dt in (1e-3, 1e-4):
            euler = l_hat + dt * adaptation_rate(l_hat, reg, config, 0)
            gaps.append(np.abs(adapt_step(l_hat, reg, config, dt, body=0) - euler).max())
        assert gaps[1] < gaps[0] / 50.0

    def test_rejects_non_positive_step(self, random_pseudo):
        """Test dt must be positive."""
        config = AdaptationConfig(gamma=1.0, sigma=0.0)
        with pytest.raises(ValueError):
            adapt_step(random_pseudo(), np.zeros((4, 4)), config, 0.0, body=0)

    def test_overflowing_retraction_raises(self):
        """Test a step whose exponential overflows is a numerical error."""
        config = AdaptationConfig(gamma=1.0, sigma=0.0)
        with pytest.raises(EstimateDivergenceError) as exc_info:
            adapt_step(np.eye(4), 1e6 * np.eye(4), config, 1.0, body=2)

        assert exc_info.value.body == 2
        assert "overflows" in str(exc_info.value)
        assert isinstance(exc_info.value, NumericalError)

    def test_non_finite_estimate_raises(self):
        """Test a non-finite estimate is reported instead of reaching scipy."""
        config = AdaptationConfig(gamma=1.0, sigma=0.0)
        l_hat = np.eye(4)
        l_hat[0, 0] = np.nan
        with pytest.raises(EstimateDivergenceError):
            adapt_step(l_hat, np.eye(4), config, 1e-2, body=0)

    def test_riccati_growth_stops_with_error(self, random_pseudo):
        """Test repeated growth steps end in a domain error, never a NaN estimate."""
        config = AdaptationConfig(gamma=1.0, sigma=0.0)
        l_hat = random_pseudo()
        reg = 50.0 * np.eye(4)
        with pytest.raises(EstimateDivergenceError):
            for _ in range(200):
                l_hat = adapt_step(l_hat, reg, config, 1e-2, body=0)
                assert np.all(np.isfinite(l_hat))
