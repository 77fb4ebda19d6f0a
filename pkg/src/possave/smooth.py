"""Scalar functions bundled with their derivatives.

The second-order approximations in this package need the value and the
second derivative of the integrand at a point. Utility functions provide
those through ``eval(x, order)``; ad-hoc integrands can be wrapped in
:class:`SmoothFunction` to satisfy the same protocol.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import DerivativeUnavailableError, InvalidParameterError

ScalarFunction = Callable[[float], float]


@dataclass(frozen=True)
class SmoothFunction:
    """A callable with optional closed-form derivatives up to order 3."""

    func: ScalarFunction
    first: ScalarFunction | None = None
    second: ScalarFunction | None = None
    third: ScalarFunction | None = None

    def __call__(self, x: float) -> float:
        return self.func(x)

    def eval(self, x: float, order: int = 0) -> float:
        if order == 0:
            return self.func(x)
        derivative = (self.first, self.second, self.third)[order - 1] \
            if order in (1, 2, 3) else None
        if order not in (1, 2, 3):
            raise InvalidParameterError(
                f"derivative order must be in 0..3, got {order}")
        if derivative is None:
            raise DerivativeUnavailableError(
                f"no derivative of order {order} attached to this function")
        return derivative(x)


def second_derivative_at(fn: object, x: float) -> float:
    """Second derivative of ``fn`` at ``x`` via the eval protocol.

    Raises DerivativeUnavailableError for plain callables that carry no
    derivative information.
    """
    eval_method = getattr(fn, "eval", None)
    if eval_method is None:
        raise DerivativeUnavailableError(
            "second-order approximation needs a function exposing "
            "eval(x, order); wrap the callable in SmoothFunction")
    return eval_method(x, 2)
