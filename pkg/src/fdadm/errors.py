"""Exception hierarchy shared by all modules."""


class FdadmError(Exception):
    """Base class for package errors."""


class ArgumentError(FdadmError, ValueError):
    """An input violates a documented precondition."""


class DomainError(ArgumentError):
    """Parameters for which an integral or series does not converge."""


class ConvergenceError(FdadmError, ArithmeticError):
    """A truncated series or quadrature did not reach its tolerance.

    ``estimate`` carries the best value obtained and ``last_term`` the
    magnitude of the last included term (or the quadrature error estimate).
    """

    def __init__(self, message, estimate=None, last_term=None):
        super().__init__(message)
        self.estimate = estimate
        self.last_term = last_term


class NumericalError(FdadmError, ArithmeticError):
    """A computed quantity failed an internal consistency check."""


class ConfigError(FdadmError):
    """Malformed experiment configuration; ``key`` names the offending path."""

    def __init__(self, message, key=None):
        super().__init__(message if key is None else f"{key}: {message}")
        self.key = key
