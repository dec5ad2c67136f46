"""Exception hierarchy shared by all chebpe modules."""


class ChebPEError(Exception):
    """Base class for every error raised by this package."""


class InvalidOrderError(ChebPEError, ValueError):
    """A truncation order or term count is outside its admissible range."""


class DimensionError(ChebPEError, ValueError):
    """Array lengths or matrix orders do not agree."""


class DomainError(ChebPEError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class SynthesisError(ChebPEError):
    """Rational-approximation coefficients could not be constructed."""


class SingularityError(ChebPEError, ZeroDivisionError):
    """A rational factor hit a pole."""

    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class FactorizationError(ChebPEError):
    """A modified step matrix is singular."""

    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class InstabilityError(ChebPEError):
    """The range march produced non-finite or runaway values."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class UnsupportedStarterError(ChebPEError):
    """The requested starter cannot be built for this environment."""


class ConfigError(ChebPEError, ValueError):
    """A run configuration is malformed; carries the offending line when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
