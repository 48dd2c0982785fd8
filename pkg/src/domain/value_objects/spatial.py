"""
Twist and wrench value types.

Twists are 6-vectors ordered (angular, linear); wrenches are their duals,
ordered (moment, force). Both are plain float arrays so that the recursive
algorithms stay vectorised.
"""

from typing import TypeAlias

import numpy as np
import numpy.typing as npt

Twist: TypeAlias = npt.NDArray[np.float64]
Wrench: TypeAlias = npt.NDArray[np.float64]
