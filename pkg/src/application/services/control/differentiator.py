"""
Filtered numerical differentiation of joint-rate signals.
"""

import math
from typing import Optional

import numpy as np
import numpy.typing as npt

Vector = npt.NDArray[np.float64]


class JointRateDifferentiator:
    """Backward difference followed by a first-order low-pass filter.

    The first sample has no predecessor and yields a zero derivative.
    """

    def __init__(self, dt: float, cutoff_hz: float):
        if not dt > 0.0 or not cutoff_hz > 0.0:
            raise ValueError("Sampling period and cutoff frequency must be positive")
        self.dt = dt
        self.cutoff_hz = cutoff_hz
        self.alpha = dt / (dt + 1.0 / (2.0 * math.pi * cutoff_hz))
        self._previous: Optional[Vector] = None
        self._filtered: Optional[Vector] = None

    def update(self, value: npt.ArrayLike) -> Vector:
        """Feed the next sample and return the filtered derivative."""
        value = np.array(value, dtype=float)
        if self._previous is None or self._filtered is None:
            self._previous = value
            self._filtered = np.zeros_like(value)
            return self._filtered.copy()
        raw = (value - self._previous) / self.dt
        self._filtered = self._filtered + self.alpha * (raw - self._filtered)
        self._previous = value
        return self._filtered.copy()

    def reset(self) -> None:
        """Forget all previous samples."""
        self._previous = None
        self._filtered = None
