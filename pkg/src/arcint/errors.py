"""Shared exception types.

Exit-code mapping for the command line tool lives in cli.py; library code
raises these directly.
"""


class ArcintError(Exception):
    """Base class for every error raised by this package."""


class ParseError(ArcintError):
    """Malformed input text. Carries the offending position when known."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class BudgetError(ArcintError):
    """An enumeration or construction would exceed the configured budget."""


class StrictValidityError(ArcintError):
    """Requested evaluation point lies outside the certified validity range."""


class InternalError(ArcintError):
    """Invariant violation inside the engine, never caused by user input.

    The most important case is an inexact division while solving ghost
    equations: that division being exact over the integers is the
    correctness certificate, so we abort instead of rounding.
    """


class PoleError(ArcintError):
    """Evaluation of a rational function at a pole."""


class ZeroDenominatorError(ArcintError):
    """Attempt to build a rational function with zero denominator."""


class SeparabilityError(ArcintError):
    """A one-variable integrand violates the separable / non-constant
    hypothesis after reduction."""


class SingularMatrixError(ArcintError):
    """A linear change of variables with vanishing determinant."""


class ContextMismatchError(ArcintError):
    """Arithmetic between Witt vectors of different contexts or rings."""
