"""Exception types shared across the package."""


class ResdecayError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ResdecayError, ValueError):
    """Input outside the mathematical domain of an operation."""


class FaddeyevaOverflowError(ResdecayError, OverflowError):
    """The reflected 2*exp(-z^2) term exceeds the representable range."""


class SolverError(ResdecayError, RuntimeError):
    """Pole search failed to converge.

    Carries the pole index and the last iterate for diagnostics.
    """

    def __init__(self, message, n=None, last_iterate=None):
        super().__init__(message)
        self.n = n
        self.last_iterate = last_iterate


class BasinJumpError(SolverError):
    """Newton iteration left the basin of the seeded pole index."""


class DegenerateStateError(ResdecayError, ArithmeticError):
    """Normalization bracket vanished (double pole); cannot normalize."""


class DecompositionUnavailableError(ResdecayError, RuntimeError):
    """Exponential/nonexponential split requires all poles proper."""


class QuadratureError(ResdecayError, RuntimeError):
    """Adaptive quadrature did not converge within its budget.

    `estimate` and `error_bound` carry the best values achieved.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class ConfigError(ResdecayError, ValueError):
    """Invalid run configuration."""
