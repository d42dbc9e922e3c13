"""Exception hierarchy shared by every module."""


class MRSpectraError(Exception):
    """Base class for all package errors."""


class DomainError(MRSpectraError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class UnsupportedSchemeError(MRSpectraError, ValueError):
    """The requested centrifugal scheme has no closed form for this operation."""


class ParameterRangeError(MRSpectraError, OverflowError):
    """A parameter drives an intermediate quantity out of floating-point range."""


class ConfigError(MRSpectraError, ValueError):
    """A run configuration is invalid or inconsistent."""


class ConvergenceError(MRSpectraError, RuntimeError):
    """An iterative procedure did not converge.

    ``best_k`` and ``residual`` carry the best state reached when the
    failure comes from the iteration engine.
    """

    def __init__(self, message, best_k=None, residual=None):
        super().__init__(message)
        self.best_k = best_k
        self.residual = residual


class DegenerateDeterminantError(ConvergenceError):
    """The quantization determinant vanishes identically in the spectral parameter."""


class ResourceError(MRSpectraError, RuntimeError):
    """Symbolic expression growth exceeded the configured cap."""


class BracketError(MRSpectraError, ValueError):
    """An energy lies outside the window where a bound state can exist."""


class SearchError(MRSpectraError, RuntimeError):
    """No eigenvalue with the requested node count was found in the bracket."""
