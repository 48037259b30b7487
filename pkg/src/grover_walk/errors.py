"""Exceptions and warnings raised by grover_walk."""


class GroverWalkError(Exception):
    """Base class for all package errors."""


class WindowExhaustedError(GroverWalkError):
    """The exact (truncation-free) interior of a window would become empty."""


class DegenerateDefectError(GroverWalkError, ValueError):
    """A construction that needs a genuine defect was called with omega = 1."""


class SpectralDomainError(GroverWalkError, ValueError):
    """Argument outside the domain of a spectral formula (z = 0, lambda = 0, ...)."""


class RatioMismatchError(GroverWalkError):
    """The six decay ratios do not coincide, or the origin condition fails."""


class TailDivergentError(GroverWalkError):
    """A truncated generating function was requested outside its disc of convergence."""


class RootFindingError(GroverWalkError):
    """Polynomial root polishing did not reach the requested residual."""


class ParameterError(GroverWalkError, ValueError):
    """Inconsistent parameters for a closed-form family."""


class NonDecayingWarning(UserWarning):
    """An eigenvector branch grows (or does not decay) away from the origin."""
