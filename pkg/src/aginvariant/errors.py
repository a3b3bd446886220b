"""Exception hierarchy."""

from __future__ import annotations


class AGError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(AGError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(AGError):
    """Structurally invalid input (quiver or angulation)."""


class NotGentle(AGError):
    pass


class SignConflict(AGError):
    pass


class PairingFailure(AGError):
    """phi or psi found zero or several candidate threads."""


class CrossingDiagonals(ValidationError):
    pass


class NotAnAngulation(ValidationError):
    pass


class ComponentWithoutArcEndpoints(ValidationError):
    pass


class InfeasibleParameters(AGError):
    pass
