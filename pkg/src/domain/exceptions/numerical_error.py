"""
Numerical domain exceptions.
"""

from typing import Optional


class NumericalError(Exception):
    """Base exception for numerical failures."""

    pass


class MalformedElementError(NumericalError):
    """Raised when a matrix does not have the structure of a Lie algebra element."""

    def __init__(self, kind: str, deviation: float, tolerance: float):
        self.kind = kind
        self.deviation = deviation
        self.tolerance = tolerance
        super().__init__(
            f"Malformed {kind} element: structural deviation {deviation:.3e} "
            f"exceeds tolerance {tolerance:.1e}"
        )


class InjectivityRadiusError(NumericalError):
    """Raised when the group logarithm is evaluated outside its injectivity region."""

    def __init__(self, trace: float, tolerance: float, body: Optional[int] = None):
        self.trace = trace
        self.tolerance = tolerance
        self.body = body
        where = f" (body {body})" if body is not None else ""
        super().__init__(
            f"Rotation trace {trace:.6f} is within {tolerance:.1e} of -1{where}; "
            "logarithm is not injective there"
        )


class DivergenceRiskError(NumericalError):
    """Raised when the Bernoulli series is evaluated outside its convergence region."""

    def __init__(self, angle: float):
        self.angle = angle
        super().__init__(
            f"Rotation angle {angle:.6f} rad is not below 2*pi; "
            "Bernoulli series may diverge"
        )


class SingularMassMatrixError(NumericalError):
    """Raised when the joint-space mass matrix cannot be factorized."""

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"Mass matrix factorization failed: {detail}")


class RegressorConstructionError(NumericalError):
    """Raised when the symmetric regressor basis system is singular."""

    pass


class SimulationAbortedError(NumericalError):
    """Raised when a run produces a non-finite state."""

    def __init__(self, step: int, time: float, reason: str):
        self.step = step
        self.time = time
        self.reason = reason
        super().__init__(
            f"Simulation aborted after step {step} (t={time:.4f} s): {reason}"
        )


class PropertyCheckError(NumericalError):
    """Raised when one or more properties of the check suite fail."""

    def __init__(self, failed: list[str]):
        self.failed = failed
        super().__init__(f"{len(failed)} property check(s) failed: {', '.join(failed)}")


class EstimateDivergenceError(NumericalError):
    """Raised when an adaptation step leaves the finite SPD cone."""

    def __init__(self, body: int, reason: str):
        self.body = body
        self.reason = reason
        super().__init__(f"Adaptation step for body {body + 1} diverged: {reason}")
