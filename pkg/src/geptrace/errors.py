"""Exception hierarchy for geptrace."""

from pathlib import Path
from typing import Optional, Union


class GeptraceError(Exception):
    """Base exception for all geptrace errors."""
    pass


class ShapeMismatch(GeptraceError, ValueError):
    """Raised when matrix dimensions do not fit the operation."""
    pass


class NonFiniteValue(GeptraceError, ValueError):
    """Raised when a matrix or vector contains NaN or Inf."""
    pass


class NotSymmetric(GeptraceError, ValueError):
    """Raised when a matrix is asymmetric beyond the symmetry tolerance."""

    def __init__(self, message: str, asymmetry: float = 0.0):
        super().__init__(message)
        self.asymmetry = asymmetry


class NotPositiveDefinite(GeptraceError, ValueError):
    """Raised when B (or a Gram matrix) is not positive definite."""

    def __init__(self, message: str, min_eigenvalue: float = 0.0):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class NotPSD(GeptraceError, ValueError):
    """Raised when a matrix required to be positive semi-definite is not."""

    def __init__(self, message: str, min_eigenvalue: float = 0.0):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class NoConvergence(GeptraceError):
    """Raised when a Jacobi iteration exceeds its sweep limit."""

    def __init__(self, message: str, sweeps: int):
        super().__init__(message)
        self.sweeps = sweeps


class RankDeficient(GeptraceError, ValueError):
    """Raised when a basis is required to have full column rank."""
    pass


class BadK(GeptraceError, ValueError):
    """Raised when k is outside 1..d."""
    pass


class BadLambda(GeptraceError, ValueError):
    """Raised when the perspective weight matrix is not positive diagonal."""
    pass


class Diverged(GeptraceError):
    """Raised when gradient ascent leaves the bounded region of the objective."""

    def __init__(self, message: str, iteration: int, value: float):
        super().__init__(message)
        self.iteration = iteration
        self.value = value


class HypothesisViolated(GeptraceError, ValueError):
    """Raised when a Rayleigh containment hypothesis does not hold for the probe vector."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class ZeroVector(GeptraceError, ValueError):
    """Raised when a Rayleigh quotient is requested for the zero vector."""
    pass


class NotOrthonormal(GeptraceError, ValueError):
    """Raised when S^T S differs from the identity."""

    def __init__(self, message: str, deviation: float):
        super().__init__(message)
        self.deviation = deviation


class NotBOrthonormal(GeptraceError, ValueError):
    """Raised when W^T B W differs from the identity."""

    def __init__(self, message: str, deviation: float):
        super().__init__(message)
        self.deviation = deviation


class BadSpectrumSpec(GeptraceError, ValueError):
    """Raised for an unusable spectrum specification in instance generation."""
    pass


class SuiteInputError(GeptraceError):
    """Raised when a check suite is missing the matrices it needs."""
    pass


class ParseError(GeptraceError):
    """Raised when a matrix file cannot be parsed."""

    def __init__(self, message: str, path: Union[str, Path], line: Optional[int] = None):
        location = f"{path}:{line}" if line is not None else f"{path}"
        super().__init__(f"{location}: {message}")
        self.path = Path(path)
        self.line = line
        self.reason = message


class ConfigError(GeptraceError):
    """Raised when a configuration file is missing or invalid."""
    pass
