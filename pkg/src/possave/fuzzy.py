"""Level-set fuzzy quantities and their weighted indicators.

A fuzzy quantity is described by its level sets: for each membership
level gamma in [0, 1] an interval [lo(gamma), hi(gamma)], with lo
non-decreasing, hi non-increasing, and lo <= hi, so the intervals are
nested as gamma rises. A weighting function f >= 0, non-decreasing with
integral 1 over [0, 1], tilts how much each level contributes.

For a scalar function u, the weighted expected value over a fuzzy
quantity A is

    E_f[u(A)] = 1/2 * integral_0^1 (u(lo(g)) + u(hi(g))) f(g) dg,

the two endpoints of each level entering with equal weight. The mean is
the identity case, the variance re-centers the squared endpoints at the
mean, and the second-order approximation replaces the integral by
u(mean) + u''(mean)/2 * variance.
"""

from __future__ import annotations

import bisect
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError, InvalidParameterError
from .quadrature import GaussLegendreRule, default_rule
from .smooth import second_derivative_at

MONOTONE_TOL = 1e-9

#: how far the default rule's integral of a weighting may sit from 1.
#: Integer power exponents integrate exactly; fractional ones have weak
#: endpoint singularities in their derivatives that cap Gauss-Legendre
#: accuracy near 1e-6, and very large exponents concentrate all mass
#: between the last nodes. The guard admits the former and refuses the
#: latter.
NORMALIZATION_TOL = 1e-5


# ---------------------------------------------------------------------------
# weighting functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightingFunction:
    """Non-negative, non-decreasing density on [0, 1] with unit integral.

    Two families: "uniform" is constant 1 (the boundary case of the
    monotone family), and "power" with exponent p >= 0 evaluates
    (p + 1) * t**p, which tilts weight toward high membership levels.
    Power with p = 1 is the tilt 2t; power with p = 0 equals uniform.
    """

    kind: str
    exponent: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("uniform", "power"):
            raise InvalidParameterError(
                f"unknown weighting kind {self.kind!r}")
        if not math.isfinite(self.exponent) or self.exponent < 0:
            raise InvalidParameterError(
                f"power exponent must be finite and >= 0, "
                f"got {self.exponent}")
        total = default_rule().integrate(self.density)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise InvalidParameterError(
                f"weighting does not integrate to 1 (got {total!r}); "
                f"the exponent is too extreme for the quadrature order")

    @classmethod
    def uniform(cls) -> "WeightingFunction":
        return cls("uniform")

    @classmethod
    def power(cls, exponent: float) -> "WeightingFunction":
        return cls("power", float(exponent))

    def density(self, level: float) -> float:
        if self.kind == "uniform":
            return 1.0
        return (self.exponent + 1.0) * level ** self.exponent

    def __call__(self, level: float) -> float:
        return self.density(level)


# ---------------------------------------------------------------------------
# fuzzy number shapes
# ---------------------------------------------------------------------------

class FuzzyNumber(ABC):
    """Common contract for level-set shapes."""

    def level_set(self, level: float) -> tuple[float, float]:
        """Interval [lo, hi] at membership ``level`` in [0, 1]."""
        if not (0.0 <= level <= 1.0):
            raise DomainError(
                f"membership level must lie in [0, 1], got {level}")
        return self._endpoints(level)

    @abstractmethod
    def _endpoints(self, level: float) -> tuple[float, float]:
        ...

    @abstractmethod
    def shift(self, offset: float) -> "FuzzyNumber":
        """The same shape translated by a crisp offset."""
        ...

    def support(self) -> tuple[float, float]:
        """The widest interval, i.e. the level set at 0."""
        return self.level_set(0.0)

    def core(self) -> tuple[float, float]:
        """The narrowest interval, i.e. the level set at 1."""
        return self.level_set(1.0)


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value}")
    return value


def _require_spread(name: str, value: float) -> float:
    value = _require_finite(name, value)
    if value < 0:
        raise InvalidParameterError(f"{name} must be >= 0, got {value}")
    return value


@dataclass(frozen=True)
class CrispPoint(FuzzyNumber):
    """A single certain value; every level set collapses to it."""

    value: float

    def __post_init__(self) -> None:
        _require_finite("value", self.value)

    def _endpoints(self, level: float) -> tuple[float, float]:
        return (self.value, self.value)

    def shift(self, offset: float) -> "CrispPoint":
        return CrispPoint(self.value + offset)


@dataclass(frozen=True)
class CrispInterval(FuzzyNumber):
    """A certain interval [lower, upper]; constant across levels.

    Requires lower < upper; a degenerate interval is a CrispPoint.
    """

    lower: float
    upper: float

    def __post_init__(self) -> None:
        _require_finite("lower", self.lower)
        _require_finite("upper", self.upper)
        if not (self.lower < self.upper):
            raise InvalidParameterError(
                f"crisp interval needs lower < upper, got "
                f"[{self.lower}, {self.upper}]")

    def _endpoints(self, level: float) -> tuple[float, float]:
        return (self.lower, self.upper)

    def shift(self, offset: float) -> "CrispInterval":
        return CrispInterval(self.lower + offset, self.upper + offset)


@dataclass(frozen=True)
class TriangularNumber(FuzzyNumber):
    """Peak with linear flanks: level set [peak - (1-g)*left, peak + (1-g)*right]."""

    peak: float
    left_spread: float
    right_spread: float

    def __post_init__(self) -> None:
        _require_finite("peak", self.peak)
        _require_spread("left_spread", self.left_spread)
        _require_spread("right_spread", self.right_spread)

    def _endpoints(self, level: float) -> tuple[float, float]:
        slack = 1.0 - level
        return (self.peak - slack * self.left_spread,
                self.peak + slack * self.right_spread)

    def shift(self, offset: float) -> "TriangularNumber":
        return TriangularNumber(self.peak + offset, self.left_spread,
                                self.right_spread)


@dataclass(frozen=True)
class TrapezoidalNumber(FuzzyNumber):
    """Flat core [core_lower, core_upper] with linear flanks."""

    core_lower: float
    core_upper: float
    left_spread: float
    right_spread: float

    def __post_init__(self) -> None:
        _require_finite("core_lower", self.core_lower)
        _require_finite("core_upper", self.core_upper)
        if self.core_lower > self.core_upper:
            raise InvalidParameterError(
                f"trapezoid core needs core_lower <= core_upper, got "
                f"[{self.core_lower}, {self.core_upper}]")
        _require_spread("left_spread", self.left_spread)
        _require_spread("right_spread", self.right_spread)

    def _endpoints(self, level: float) -> tuple[float, float]:
        slack = 1.0 - level
        return (self.core_lower - slack * self.left_spread,
                self.core_upper + slack * self.right_spread)

    def shift(self, offset: float) -> "TrapezoidalNumber":
        return TrapezoidalNumber(self.core_lower + offset,
                                 self.core_upper + offset,
                                 self.left_spread, self.right_spread)


@dataclass(frozen=True)
class SampledNumber(FuzzyNumber):
    """Level sets given on a grid, interpolated linearly in the level.

    ``levels`` must rise strictly from 0 to 1; across the grid the lower
    endpoints may not decrease and the upper endpoints may not increase
    (beyond a small slack for rounding), so the interpolated intervals
    stay nested.
    """

    levels: tuple[float, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self) -> None:
        levels = tuple(float(v) for v in self.levels)
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if not (len(levels) == len(lower) == len(upper)):
            raise InvalidParameterError(
                "levels, lower, and upper must have equal length")
        if len(levels) < 2:
            raise InvalidParameterError("need at least two grid levels")
        for name, values in (("levels", levels), ("lower", lower),
                             ("upper", upper)):
            if any(not math.isfinite(v) for v in values):
                raise InvalidParameterError(f"{name} must all be finite")
        if levels[0] != 0.0 or levels[-1] != 1.0:
            raise InvalidParameterError(
                f"level grid must start at 0 and end at 1, got "
                f"[{levels[0]}, ..., {levels[-1]}]")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise InvalidParameterError("level grid must rise strictly")
        if any(b < a - MONOTONE_TOL for a, b in zip(lower, lower[1:])):
            raise InvalidParameterError(
                "lower endpoints must be non-decreasing in the level")
        if any(b > a + MONOTONE_TOL for a, b in zip(upper, upper[1:])):
            raise InvalidParameterError(
                "upper endpoints must be non-increasing in the level")
        if any(lo > hi + MONOTONE_TOL for lo, hi in zip(lower, upper)):
            raise InvalidParameterError(
                "lower endpoint exceeds upper endpoint on the grid")

    @classmethod
    def from_table(
            cls,
            rows: Sequence[tuple[float, float, float]]) -> "SampledNumber":
        """Build from (level, lower, upper) rows."""
        if not rows:
            raise InvalidParameterError("empty level table")
        levels, lower, upper = zip(*rows)
        return cls(tuple(levels), tuple(lower), tuple(upper))

    def _endpoints(self, level: float) -> tuple[float, float]:
        levels = self.levels
        if level <= levels[0]:
            return (self.lower[0], self.upper[0])
        if level >= levels[-1]:
            return (self.lower[-1], self.upper[-1])
        idx = bisect.bisect_right(levels, level)
        span = levels[idx] - levels[idx - 1]
        frac = (level - levels[idx - 1]) / span
        lo = self.lower[idx - 1] + frac * (self.lower[idx] - self.lower[idx - 1])
        hi = self.upper[idx - 1] + frac * (self.upper[idx] - self.upper[idx - 1])
        return (lo, hi)

    def shift(self, offset: float) -> "SampledNumber":
        return SampledNumber(self.levels,
                             tuple(v + offset for v in self.lower),
                             tuple(v + offset for v in self.upper))


# ---------------------------------------------------------------------------
# weighted indicators
# ---------------------------------------------------------------------------

def possibilistic_expected_utility(
        weighting: WeightingFunction,
        number: FuzzyNumber,
        fn: Callable[[float], float],
        rule: GaussLegendreRule | None = None) -> float:
    """E_f[fn(A)]: average of fn over both level-set endpoints, tilted by f."""
    rule = rule or default_rule()
    terms = []
    for level, weight in zip(rule.nodes, rule.weights):
        lo, hi = number.level_set(level)
        terms.append(weight * weighting.density(level) * (fn(lo) + fn(hi)))
    return 0.5 * math.fsum(terms)


def possibilistic_mean(weighting: WeightingFunction,
                       number: FuzzyNumber,
                       rule: GaussLegendreRule | None = None) -> float:
    """The identity case of the weighted expected value."""
    return possibilistic_expected_utility(weighting, number, lambda x: x, rule)


def possibilistic_variance(weighting: WeightingFunction,
                           number: FuzzyNumber,
                           rule: GaussLegendreRule | None = None) -> float:
    """Weighted spread of the endpoints around the computed mean.

    The mean is computed once and reused inside the integrand; a crisp
    point therefore yields (numerically) zero.
    """
    rule = rule or default_rule()
    center = possibilistic_mean(weighting, number, rule)
    terms = []
    for level, weight in zip(rule.nodes, rule.weights):
        lo, hi = number.level_set(level)
        terms.append(weight * weighting.density(level)
                     * ((lo - center) ** 2 + (hi - center) ** 2))
    return 0.5 * math.fsum(terms)


def approx_expected_utility(weighting: WeightingFunction,
                            number: FuzzyNumber,
                            fn: object,
                            rule: GaussLegendreRule | None = None) -> float:
    """Second-order stand-in for E_f[fn(A)]:

        fn(mean) + fn''(mean)/2 * variance.

    ``fn`` must expose eval(x, order) (a utility function or a
    SmoothFunction with a second derivative attached). Exact whenever
    fn'' is constant; the error shrinks with the fourth power of the
    spread for shapes symmetric about the mean.
    """
    rule = rule or default_rule()
    center = possibilistic_mean(weighting, number, rule)
    spread = possibilistic_variance(weighting, number, rule)
    curvature = second_derivative_at(fn, center)
    return fn(center) + 0.5 * curvature * spread
