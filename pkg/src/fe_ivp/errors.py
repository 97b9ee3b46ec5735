"""Exception hierarchy shared by every engine.

The CLI maps the three top-level families onto distinct exit codes:
``ValidationError`` -> 2, ``ParseError`` -> 3, ``OutOfDomainError`` and
``DomainError`` -> 4.
"""
from __future__ import annotations


class FEError(Exception):
    """Base class for all package errors."""


# -- parse errors (exit 3) --------------------------------------------------

class ParseError(FEError, ValueError):
    """Malformed expression or interval text."""

    def __init__(self, message: str, position: int | None = None, expected: str | None = None):
        self.position = position
        self.expected = expected
        if position is not None:
            message = f"{message} at position {position}"
        if expected:
            message = f"{message} (expected {expected})"
        super().__init__(message)


class ExprSyntaxError(ParseError):
    pass


class UnknownIdentifierError(ParseError):
    def __init__(self, name: str, position: int):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", position)


class IntervalParseError(ParseError):
    pass


# -- validation errors (exit 2) ---------------------------------------------

class ValidationError(FEError, ValueError):
    """Problem definition rejected before any evaluation."""


class ArgumentError(ValidationError):
    pass


class OverlapError(ValidationError):
    pass


class DegenerateError(ValidationError):
    pass


class ZeroBError(ValidationError):
    pass


class ShapeError(ValidationError):
    pass


class CoverageError(ValidationError):
    def __init__(self, uncovered, message: str | None = None):
        self.uncovered = uncovered
        super().__init__(message or f"representative set leaves {uncovered} uncovered")


class InconsistentDataError(ValidationError):
    pass


class PenlpViolationError(ValidationError):
    """Initial set touches a limit point of the equation."""

    def __init__(self, limit_point: float, message: str | None = None):
        self.limit_point = limit_point
        super().__init__(
            message
            or f"initial set closure contains the limit point {format(limit_point, '.17g')}; "
            "keep a positive gap around it"
        )


# -- evaluation errors (exit 4) ---------------------------------------------

class OutOfDomainError(FEError, ValueError):
    def __init__(self, message: str, point: float | None = None):
        self.point = point
        super().__init__(message)


class DomainError(FEError, ArithmeticError):
    """Expression evaluated outside its real domain (ln(-1), 1/0, ...)."""


class RecursionDepthError(FEError, RuntimeError):
    pass


class IterationCapError(FEError, RuntimeError):
    pass
