"""Exception types raised by the library."""


class RareGraphError(Exception):
    """Base class for all library errors."""


class InvalidRangeError(RareGraphError, ValueError):
    pass


class DomainError(RareGraphError, ValueError):
    """An argument lies outside [0, 1) or another required domain."""


class FamilyIndexError(RareGraphError, IndexError):
    pass


class FamilyParseError(RareGraphError, ValueError):
    """Malformed family document. ``position`` locates the offending item."""

    def __init__(self, message: str, position: str | None = None):
        self.position = position
        if position is not None:
            message = f"{position}: {message}"
        super().__init__(message)


class HypothesisViolation(RareGraphError, ValueError):
    """A reading case whose U meets the reserved triple."""


class DegenerateInputError(RareGraphError, ValueError):
    pass


class ResourceLimitError(RareGraphError, RuntimeError):
    pass


class InsufficientDataError(RareGraphError, ValueError):
    pass
