"""
Post-run analysis of simulation traces.
"""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import stats

from src.application.services.inertia import phi_inverse
from src.domain.entities.trace import Trace

DECAY_FRACTION = 0.1
TRANSIENT_FRACTION = 0.1
BOUND_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DecayFit:
    """Exponential decay rate of a positive signal and the quality of the fit."""

    rate: float
    r_squared: float
    window_end: float
    samples: int


@dataclass(frozen=True)
class BoundCheck:
    """Result of the parameter-estimate boundedness check."""

    ok: bool
    margin: float
    bound: float
    observed_max: float
    transient_bounded: bool


def fit_decay_series(time: npt.ArrayLike, values: npt.ArrayLike) -> DecayFit:
    """Least-squares slope of log(values) over [0, t90].

    t90 is the first time the signal drops to a tenth of its initial value; the
    whole series is used when it never does. Non-positive samples are skipped.
    """
    time = np.asarray(time, dtype=float)
    values = np.asarray(values, dtype=float)
    if values.size < 2 or not values[0] > 0.0:
        return DecayFit(rate=0.0, r_squared=0.0, window_end=0.0, samples=0)

    below = np.flatnonzero(values <= DECAY_FRACTION * values[0])
    end = int(below[0]) if below.size else values.size - 1
    end = max(end, 1)
    window = slice(0, end + 1)
    t, v = time[window], values[window]
    positive = v > 0.0
    t, v = t[positive], v[positive]
    if t.size < 2:
        return DecayFit(rate=0.0, r_squared=0.0, window_end=float(time[end]), samples=0)

    fit = stats.linregress(t, np.log(v))
    return DecayFit(
        rate=float(-fit.slope),
        r_squared=float(fit.rvalue**2),
        window_end=float(time[end]),
        samples=int(t.size),
    )


def fit_decay(trace: Trace, adaptive: bool = False) -> DecayFit:
    """Decay fit of the total Lyapunov function (or of v_T when adaptive)."""
    series = trace.lyapunov_adaptive if adaptive else trace.lyapunov
    return fit_decay_series(trace.time, series)


def estimate_bound_check(trace: Trace, gamma: float) -> BoundCheck:
    """Check max lambda_max(L_hat^-1 L) against phi^-1(max v_T / gamma).

    The divergence term of v_T bounds phi of every relative eigenvalue, so the
    largest eigenvalue must stay on the near side of the upper-branch inverse.
    """
    observed = trace.lambda_max_ratio.max(axis=1)
    observed_max = float(observed.max())
    bound = phi_inverse(max(float(trace.lyapunov_adaptive.max()), 0.0) / gamma)

    split = max(1, int(np.ceil(TRANSIENT_FRACTION * observed.size)))
    transient_max = float(observed[:split].max())
    settled = observed[split:]
    transient_bounded = bool(
        settled.size == 0 or float(settled.max()) <= transient_max + BOUND_TOLERANCE
    )
    return BoundCheck(
        ok=observed_max <= bound + BOUND_TOLERANCE,
        margin=bound - observed_max,
        bound=bound,
        observed_max=observed_max,
        transient_bounded=transient_bounded,
    )


def lyapunov_violations(
    trace: Trace, relative: float = 1e-6, absolute: float = 1e-12
) -> int:
    """Number of control steps where V grows by more than relative * V + absolute."""
    v = trace.lyapunov
    growth = v[1:] - v[:-1]
    return int(np.count_nonzero(growth > relative * v[:-1] + absolute))

