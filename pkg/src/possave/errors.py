"""Exception taxonomy for the package.

Every failure mode raised by the library derives from :class:`PossaveError`,
so callers can catch one base class. Subclasses also inherit the closest
builtin (ValueError, TypeError, ...) so generic handling keeps working.
"""

from __future__ import annotations


class PossaveError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(PossaveError, ValueError):
    """A constructor or operation received parameters outside its contract."""


class DomainError(PossaveError, ValueError):
    """An argument lies outside the mathematical domain of the object."""


class DerivativeUnavailableError(PossaveError, TypeError):
    """A second-order approximation was requested for a function that does
    not expose the required derivative."""


class SingularityError(PossaveError, ZeroDivisionError):
    """A prudence index was requested at a point where u''(x) = 0."""


class MeanMatchError(PossaveError, ValueError):
    """The three return descriptions of a comparison do not share a mean.

    Carries the three computed means so the caller can report them.
    """

    def __init__(self, message: str, *, certain: float, probabilistic: float,
                 possibilistic: float) -> None:
        super().__init__(message)
        self.certain = certain
        self.probabilistic = probabilistic
        self.possibilistic = possibilistic


class NoInteriorOptimumError(PossaveError):
    """The first-order condition has constant sign on the feasible interval.

    ``direction`` names the boundary the objective is increasing toward:
    "upper" when the FOC stays positive, "lower" when it stays negative.
    """

    def __init__(self, message: str, *, direction: str) -> None:
        super().__init__(message)
        self.direction = direction


class ConvergenceError(PossaveError):
    """The solver exhausted its iteration budget. Carries the best bracket."""

    def __init__(self, message: str, *, bracket: tuple[float, float],
                 iterations: int) -> None:
        super().__init__(message)
        self.bracket = bracket
        self.iterations = iterations


class ConfigError(PossaveError, ValueError):
    """A run configuration is malformed or self-inconsistent."""
