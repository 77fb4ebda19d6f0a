"""Random gross returns: uniform on an interval or finitely supported.

Both kinds expose mean, variance, support, and expectations E[g(X)].
The uniform expectation integrates with the shared Gauss-Legendre rule
mapped onto [lower, upper]; the discrete one is the probability-weighted
sum. ``approx_expect`` is the matching second-order form
g(mean) + g''(mean)/2 * variance.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable

from .errors import InvalidParameterError
from .quadrature import GaussLegendreRule, default_rule
from .smooth import second_derivative_at

PROBABILITY_SUM_TOL = 1e-12


class RandomReturn(ABC):
    """Positive random gross return with finite support bounds."""

    @abstractmethod
    def mean(self) -> float:
        ...

    @abstractmethod
    def variance(self) -> float:
        ...

    @abstractmethod
    def support(self) -> tuple[float, float]:
        """Smallest and largest attainable return."""
        ...

    @abstractmethod
    def expect(self, fn: Callable[[float], float],
               rule: GaussLegendreRule | None = None) -> float:
        """E[fn(X)]."""
        ...


@dataclass(frozen=True)
class UniformReturn(RandomReturn):
    """Uniform on [lower, upper] with 0 < lower < upper."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise InvalidParameterError("uniform bounds must be finite")
        if not (0.0 < self.lower < self.upper):
            raise InvalidParameterError(
                f"uniform return needs 0 < lower < upper, got "
                f"[{self.lower}, {self.upper}]")

    def mean(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def variance(self) -> float:
        width = self.upper - self.lower
        return width * width / 12.0

    def support(self) -> tuple[float, float]:
        return (self.lower, self.upper)

    def expect(self, fn: Callable[[float], float],
               rule: GaussLegendreRule | None = None) -> float:
        rule = rule or default_rule()
        return rule.average(fn, self.lower, self.upper)


@dataclass(frozen=True)
class DiscreteReturn(RandomReturn):
    """Finitely many positive atoms (value, probability)."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        atoms = tuple((float(v), float(p)) for v, p in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise InvalidParameterError("discrete return needs atoms")
        for value, prob in atoms:
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameterError(
                    f"atom values must be positive and finite, got {value}")
            if not (math.isfinite(prob) and prob >= 0):
                raise InvalidParameterError(
                    f"probabilities must be >= 0, got {prob}")
        total = math.fsum(p for _, p in atoms)
        if abs(total - 1.0) > PROBABILITY_SUM_TOL:
            raise InvalidParameterError(
                f"probabilities must sum to 1, got {total!r}")

    def mean(self) -> float:
        return math.fsum(p * v for v, p in self.atoms)

    def variance(self) -> float:
        center = self.mean()
        return math.fsum(p * (v - center) ** 2 for v, p in self.atoms)

    def support(self) -> tuple[float, float]:
        values = [v for v, _ in self.atoms]
        return (min(values), max(values))

    def expect(self, fn: Callable[[float], float],
               rule: GaussLegendreRule | None = None) -> float:
        return math.fsum(p * fn(v) for v, p in self.atoms)


def approx_expect(distribution: RandomReturn, fn: object) -> float:
    """Second-order stand-in for E[fn(X)]:

        fn(mean) + fn''(mean)/2 * variance.

    ``fn`` must expose eval(x, order). Exact when fn'' is constant.
    """
    center = distribution.mean()
    curvature = second_derivative_at(fn, center)
    return fn(center) + 0.5 * curvature * distribution.variance()
