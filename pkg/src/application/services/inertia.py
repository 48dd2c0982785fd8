"""
Spatial inertia on the pseudo-inertia manifold.

A spatial inertia (m, h, I_A) maps one-to-one to the 4x4 pseudo-inertia

    L = [[Sigma, h], [h^T, m]],    Sigma = tr(I_A)/2 I - I_A,

which is positive definite exactly when the body is physically consistent.
The inverse map I_A = tr(Sigma) I - Sigma is linear in L, which is what the
regressor construction relies on.
"""

import math
from functools import lru_cache
from typing import Iterable, Tuple

import numpy as np
import numpy.typing as npt
from scipy import linalg
from scipy.optimize import brentq

from src.application.services.liegroup import ad, hat3
from src.domain.entities.gain_set import AdaptationConfig
from src.domain.exceptions.numerical_error import (
    EstimateDivergenceError,
    RegressorConstructionError,
)
from src.domain.exceptions.validation_error import (
    InvalidFieldError,
    PhysicalInconsistencyError,
)
from src.domain.value_objects.spatial import Twist
from src.domain.value_objects.spatial_inertia import SpatialInertia

Matrix = npt.NDArray[np.float64]

SYMMETRY_TOLERANCE = 1e-12
MAX_EXPONENT = 0.5 * math.log(np.finfo(float).max)


def check_pseudo(l: npt.ArrayLike, name: str = "pseudo-inertia") -> Matrix:
    """Return l as a float array, rejecting non-symmetric or non-SPD input."""
    l = np.asarray(l, dtype=float)
    if l.shape != (4, 4):
        raise PhysicalInconsistencyError(f"{name} must be 4x4, got {l.shape}")
    scale = max(1.0, float(np.abs(l).max()))
    if float(np.abs(l - l.T).max()) > SYMMETRY_TOLERANCE * scale:
        raise PhysicalInconsistencyError(f"{name} is not symmetric")
    smallest = float(np.linalg.eigvalsh(l).min())
    if smallest <= 0.0:
        raise PhysicalInconsistencyError(f"{name} is not positive definite", smallest)
    return l


def to_pseudo(inertia: SpatialInertia) -> Matrix:
    """Pseudo-inertia of a spatial inertia; raises if it is not physical."""
    i_a = inertia.rotational_inertia
    l = np.zeros((4, 4))
    l[:3, :3] = 0.5 * np.trace(i_a) * np.eye(3) - i_a
    l[:3, 3] = inertia.first_moment
    l[3, :3] = inertia.first_moment
    l[3, 3] = inertia.mass
    return check_pseudo(l)


def from_pseudo(l: npt.ArrayLike) -> SpatialInertia:
    """Spatial inertia of a pseudo-inertia."""
    l = check_pseudo(l)
    sigma = l[:3, :3]
    return SpatialInertia(
        mass=float(l[3, 3]),
        first_moment=l[:3, 3].copy(),
        rotational_inertia=np.trace(sigma) * np.eye(3) - sigma,
    )


def spatial_matrix_from_pseudo(l: npt.ArrayLike) -> Matrix:
    """6x6 spatial inertia matrix of any symmetric 4x4, without checks.

    Linear in l; agrees with from_pseudo(l).matrix on the SPD cone.
    """
    l = np.asarray(l, dtype=float)
    sigma = l[:3, :3]
    h_hat = hat3(l[:3, 3])
    m = np.zeros((6, 6))
    m[:3, :3] = np.trace(sigma) * np.eye(3) - sigma
    m[:3, 3:] = h_hat
    m[3:, :3] = h_hat.T
    m[3:, 3:] = l[3, 3] * np.eye(3)
    return m


def metric_inner(l: npt.ArrayLike, x: npt.ArrayLike, y: npt.ArrayLike) -> float:
    """Affine-invariant inner product tr(L^-1 X L^-1 Y) / 2 at L."""
    l = np.asarray(l, dtype=float)
    lx = linalg.solve(l, np.asarray(x, dtype=float), assume_a="pos")
    ly = linalg.solve(l, np.asarray(y, dtype=float), assume_a="pos")
    return 0.5 * float(np.trace(lx @ ly))


def relative_eigenvalues(l: npt.ArrayLike, l_hat: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Eigenvalues of L_hat^-1 L, ascending."""
    return linalg.eigh(check_pseudo(l), check_pseudo(l_hat, "estimate"), eigvals_only=True)


def phi(lam: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """phi(lambda) = -log(lambda) + lambda - 1, zero only at lambda = 1."""
    lam = np.asarray(lam, dtype=float)
    return -np.log(lam) + lam - 1.0


def phi_inverse(value: float) -> float:
    """Root of phi(lambda) = value on the branch lambda >= 1."""
    if value < 0.0:
        raise ValueError(f"phi takes only non-negative values, got {value}")
    if value == 0.0:
        return 1.0
    upper = 2.0 * value + 3.0
    return float(brentq(lambda lam: float(phi(lam)) - value, 1.0, upper, xtol=1e-14))


def bregman_divergence(l: npt.ArrayLike, l_hat: npt.ArrayLike, gamma: float) -> float:
    """Log-det divergence d(L || L_hat) = gamma (log|L_hat|/|L| + tr(L_hat^-1 L) - 4)."""
    l = check_pseudo(l)
    l_hat = check_pseudo(l_hat, "estimate")
    _, logdet_hat = np.linalg.slogdet(l_hat)
    _, logdet = np.linalg.slogdet(l)
    trace = float(np.trace(linalg.solve(l_hat, l, assume_a="pos")))
    return gamma * (logdet_hat - logdet + trace - 4.0)


def bregman_divergence_spectral(
    l: npt.ArrayLike, l_hat: npt.ArrayLike, gamma: float
) -> float:
    """Same divergence as gamma * sum(phi(lambda_j)) over eigenvalues of L_hat^-1 L."""
    return gamma * float(np.sum(phi(relative_eigenvalues(l, l_hat))))


def geodesic_distance(l: npt.ArrayLike, l_hat: npt.ArrayLike) -> float:
    """Affine-invariant distance ||log(L^-1/2 L_hat L^-1/2)||_F."""
    lam = relative_eigenvalues(l_hat, l)
    return float(np.sqrt(np.sum(np.log(lam) ** 2)))


def fit_divergence_bound(
    samples: Iterable[Tuple[Matrix, Matrix, Matrix]], gamma: float = 1.0
) -> float:
    """Smallest C with d(L || L_hat) <= C (|L_hat - L0|^2 + |L - L0|^2) over samples.

    Norms are taken in the metric at L_hat. Each sample is (L, L_hat, L0).
    """
    bound = 0.0
    for l, l_hat, l0 in samples:
        divergence = bregman_divergence(l, l_hat, gamma)
        d_hat = np.asarray(l_hat) - np.asarray(l0)
        d_true = np.asarray(l) - np.asarray(l0)
        scale = metric_inner(l_hat, d_hat, d_hat) + metric_inner(l_hat, d_true, d_true)
        if scale <= 0.0:
            if divergence > 1e-12:
                return math.inf
            continue
        bound = max(bound, divergence / scale)
    return bound


@lru_cache(maxsize=1)
def _regressor_basis() -> Tuple[Matrix, Matrix, Matrix]:
    """Basis of Sym(4), its spatial images and the trace Gram matrix."""
    basis = []
    for i in range(4):
        for j in range(i, 4):
            e = np.zeros((4, 4))
            e[i, j] = 1.0
            e[j, i] = 1.0
            basis.append(e)
    stacked = np.array(basis)
    spatial = np.array([spatial_matrix_from_pseudo(e) for e in stacked])
    gram = np.einsum("kab,jba->kj", stacked, stacked)
    return stacked, spatial, gram


def regressor(v_err: Twist, v_ref: Twist, a_ref: Twist, v_body: Twist) -> Matrix:
    """Unique symmetric R with tr(L R) = v_err^T (M a_ref - coad(v_body, M v_ref)) for all L.

    M is the spatial inertia of L; the identity holds for every symmetric L by
    linearity of the pseudo-inertia map.
    """
    basis, spatial, gram = _regressor_basis()
    v_err = np.asarray(v_err, dtype=float)
    transported = ad(np.asarray(v_body, dtype=float)) @ v_err
    power = np.einsum("i,kij,j->k", v_err, spatial, np.asarray(a_ref, dtype=float))
    power -= np.einsum("i,kij,j->k", transported, spatial, np.asarray(v_ref, dtype=float))
    try:
        coefficients = linalg.solve(gram, power, assume_a="sym")
    except linalg.LinAlgError as exc:
        raise RegressorConstructionError(f"Singular regressor basis system: {exc}") from exc
    result = np.einsum("k,kab->ab", coefficients, basis)
    return 0.5 * (result + result.T)


def adaptation_rate(
    l_hat: Matrix, reg: Matrix, config: AdaptationConfig, body: int
) -> Matrix:
    """Continuous-time estimate flow L_hat R L_hat / gamma - sigma (L_hat - L0)."""
    rate = (l_hat @ reg @ l_hat) / config.gamma
    if config.sigma > 0.0:
        if body >= len(config.nominal):
            raise InvalidFieldError(
                "adaptation.nominal", f"no nominal pseudo-inertia bound for body {body}"
            )
        rate = rate - config.sigma * (l_hat - config.nominal[body])
    return rate


def adapt_step(
    l_hat: npt.ArrayLike,
    reg: npt.ArrayLike,
    config: AdaptationConfig,
    dt: float,
    *,
    body: int,
) -> Matrix:
    """Advance the estimate by one step of length dt, staying on the SPD cone.

    The Euler increment is mapped through the retraction
    L+ = G expm(G^-1 dL G^-T) G^T with G the Cholesky factor of L_hat.
    """
    if not dt > 0.0:
        raise ValueError(f"Adaptation step must be positive, got {dt}")
    l_hat = np.asarray(l_hat, dtype=float)
    increment = dt * adaptation_rate(l_hat, np.asarray(reg, dtype=float), config, body)
    if not np.all(np.isfinite(increment)):
        raise EstimateDivergenceError(body, "non-finite increment")

    try:
        g = linalg.cholesky(l_hat, lower=True)
    except (linalg.LinAlgError, ValueError) as exc:
        raise EstimateDivergenceError(body, f"estimate is not SPD ({exc})") from exc
    x = linalg.solve_triangular(g, increment, lower=True)
    x = linalg.solve_triangular(g, x.T, lower=True)
    x = 0.5 * (x + x.T)
    if not np.all(np.isfinite(x)):
        raise EstimateDivergenceError(body, "non-finite retraction argument")
    eigenvalues, eigenvectors = linalg.eigh(x)
    if eigenvalues.max() > MAX_EXPONENT:
        raise EstimateDivergenceError(
            body, f"retraction exponent {eigenvalues.max():.3e} overflows"
        )
    exp_x = (eigenvectors * np.exp(eigenvalues)) @ eigenvectors.T
    updated = g @ exp_x @ g.T
    if not np.all(np.isfinite(updated)):
        raise EstimateDivergenceError(body, "non-finite estimate")
    return 0.5 * (updated + updated.T)


def spd_margin(l: npt.ArrayLike) -> float:
    """Smallest eigenvalue of a symmetric matrix."""
    return float(np.linalg.eigvalsh(np.asarray(l, dtype=float)).min())
