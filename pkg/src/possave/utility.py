"""Consumer utility functions with closed-form derivatives.

Four families, each strictly increasing and strictly concave on its
declared domain:

    crra(gamma):   u(x) = x**(1-gamma) / (1-gamma)   on x > 0, gamma > 0, gamma != 1
    log:           u(x) = ln(x)                      on x > 0 (the gamma -> 1 limit)
    cara(a):       u(x) = -exp(-a*x) / a             on all reals, a > 0
    quadratic(b):  u(x) = x - b*x**2 / 2             on x < 1/b, b > 0

``eval(x, order)`` returns u and its first three derivatives. Prudence
indices measure the convexity of marginal utility: absolute prudence is
-u'''(x)/u''(x), relative prudence multiplies by x. Relative prudence
against the threshold 2 is what separates saving more under risk from
saving less.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

from .errors import DomainError, InvalidParameterError, SingularityError

ORDERS = (0, 1, 2, 3)


class UtilityFunction(ABC):
    """Scalar utility with derivatives up to order 3 on an open domain."""

    #: open interval of admissible consumption levels
    domain: tuple[float, float] = (-math.inf, math.inf)

    def eval(self, x: float, order: int = 0) -> float:
        if order not in ORDERS:
            raise InvalidParameterError(
                f"derivative order must be in 0..3, got {order}")
        lo, hi = self.domain
        if not (lo < x < hi):
            raise DomainError(
                f"{self!r} is undefined at x={x}; domain is ({lo}, {hi})")
        return self._derivative(x, order)

    @abstractmethod
    def _derivative(self, x: float, order: int) -> float:
        ...

    def __call__(self, x: float) -> float:
        return self.eval(x, 0)


@dataclass(frozen=True, repr=False)
class CRRAUtility(UtilityFunction):
    """Constant relative risk aversion; relative prudence is gamma + 1."""

    gamma: float

    domain = (0.0, math.inf)

    def __post_init__(self) -> None:
        if not math.isfinite(self.gamma) or self.gamma <= 0:
            raise InvalidParameterError(
                f"crra needs gamma > 0, got {self.gamma}")
        if self.gamma == 1.0:
            raise InvalidParameterError(
                "crra is undefined at gamma = 1; use LogUtility")

    def _derivative(self, x: float, order: int) -> float:
        g = self.gamma
        if order == 0:
            return x ** (1.0 - g) / (1.0 - g)
        if order == 1:
            return x ** -g
        if order == 2:
            return -g * x ** (-g - 1.0)
        return g * (g + 1.0) * x ** (-g - 2.0)

    def __repr__(self) -> str:
        return f"CRRAUtility(gamma={self.gamma})"


@dataclass(frozen=True, repr=False)
class LogUtility(UtilityFunction):
    """u(x) = ln(x); the unit relative risk aversion case."""

    domain = (0.0, math.inf)

    def _derivative(self, x: float, order: int) -> float:
        if order == 0:
            return math.log(x)
        if order == 1:
            return 1.0 / x
        if order == 2:
            return -1.0 / (x * x)
        return 2.0 / (x * x * x)

    def __repr__(self) -> str:
        return "LogUtility()"


@dataclass(frozen=True, repr=False)
class CARAUtility(UtilityFunction):
    """Constant absolute risk aversion with coefficient a > 0."""

    coefficient: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.coefficient) or self.coefficient <= 0:
            raise InvalidParameterError(
                f"cara needs coefficient > 0, got {self.coefficient}")

    def _derivative(self, x: float, order: int) -> float:
        a = self.coefficient
        decay = math.exp(-a * x)
        if order == 0:
            return -decay / a
        if order == 1:
            return decay
        if order == 2:
            return -a * decay
        return a * a * decay

    def __repr__(self) -> str:
        return f"CARAUtility(coefficient={self.coefficient})"


@dataclass(frozen=True, repr=False)
class QuadraticUtility(UtilityFunction):
    """u(x) = x - b*x**2/2, increasing only below the bliss point 1/b."""

    curvature: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.curvature) or self.curvature <= 0:
            raise InvalidParameterError(
                f"quadratic needs curvature > 0, got {self.curvature}")
        object.__setattr__(self, "domain",
                           (-math.inf, 1.0 / self.curvature))

    def _derivative(self, x: float, order: int) -> float:
        b = self.curvature
        if order == 0:
            return x - 0.5 * b * x * x
        if order == 1:
            return 1.0 - b * x
        if order == 2:
            return -b
        return 0.0

    def __repr__(self) -> str:
        return f"QuadraticUtility(curvature={self.curvature})"


def crra_family(gamma: float) -> UtilityFunction:
    """CRRA for gamma != 1, log for gamma == 1.

    Lets grids and sweeps cross the gamma = 1 threshold without a hole.
    """
    if gamma == 1.0:
        return LogUtility()
    return CRRAUtility(gamma)


def absolute_prudence(utility: UtilityFunction, x: float) -> float:
    """-u'''(x) / u''(x); errors where marginal utility has no curvature."""
    second = utility.eval(x, 2)
    third = utility.eval(x, 3)
    if second == 0.0:
        raise SingularityError(
            f"absolute prudence undefined at x={x}: u''(x) = 0")
    return -third / second


def relative_prudence(utility: UtilityFunction, x: float) -> float:
    """x * absolute_prudence(utility, x)."""
    return x * absolute_prudence(utility, x)
