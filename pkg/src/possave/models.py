"""Two-period saving problems under three return descriptions.

A consumer with first-period income ``income`` saves s, consumes
income - s now, and consumes s times the gross return next period. The
objective, its first-order condition, and the FOC's derivative share one
form across the three models; they differ only in how the return enters:

    certain rate R:        second-period term   u(s R)
    random return X:       E[u(s X)]
    fuzzy return (f, A):   E_f[u(s A)]  over the level sets of A

Differentiating under the expectation gives the unified moments

    order 0:  E[u(s x)]
    order 1:  E[x  u'(s x)]      (the FOC's second-period part)
    order 2:  E[x^2 u''(s x)]    (strictly negative, so the FOC falls)

with E the degenerate, probability, or level-set average respectively.
Evaluations are restricted to a feasible saving interval that keeps both
consumptions inside the utility's domain, shrunk by a relative margin so
boundary singularities are never touched.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod

from .errors import DomainError, InvalidParameterError
from .fuzzy import (FuzzyNumber, WeightingFunction,
                    possibilistic_expected_utility)
from .quadrature import GaussLegendreRule, default_rule
from .stochastic import RandomReturn
from .utility import UtilityFunction

#: relative shrink applied to each end of the theoretical feasible interval
FEASIBLE_MARGIN = 1e-9


class SavingProblem(ABC):
    """Immutable two-period problem; subclasses fix the return description.

    Subclasses set their return attributes before delegating here, since
    the base constructor validates the return support and derives the
    feasible interval from it.
    """

    def __init__(self, income: float, utility: UtilityFunction,
                 rule: GaussLegendreRule | None = None) -> None:
        income = float(income)
        if not (math.isfinite(income) and income > 0):
            raise InvalidParameterError(
                f"income must be positive and finite, got {income}")
        self._income = income
        self._utility = utility
        self._rule = rule or default_rule()
        support = self.return_support()
        if not (support[0] > 0):
            raise InvalidParameterError(
                f"gross returns must stay positive; support starts at "
                f"{support[0]}")
        self._feasible = self._derive_feasible_interval(support)

    # -- construction helpers ------------------------------------------------

    def _derive_feasible_interval(
            self, support: tuple[float, float]) -> tuple[float, float]:
        dom_lo, dom_hi = self._utility.domain
        x_min, x_max = support
        lo, hi = 0.0, self._income
        # first-period consumption income - s must stay inside the domain
        if math.isfinite(dom_hi):
            lo = max(lo, self._income - dom_hi)
        if dom_lo > -math.inf:
            hi = min(hi, self._income - dom_lo)
        # second-period consumption s*x for every x in the support
        if math.isfinite(dom_hi):
            hi = min(hi, dom_hi / x_max)
        if dom_lo > 0:
            lo = max(lo, dom_lo / x_min)
        if not lo < hi:
            raise InvalidParameterError(
                f"no feasible saving level: the interval ({lo}, {hi}) "
                f"is empty for income {self._income} and {self._utility!r}")
        margin = FEASIBLE_MARGIN * (hi - lo)
        return (lo + margin, hi - margin)

    # -- read-only state -----------------------------------------------------

    @property
    def income(self) -> float:
        return self._income

    @property
    def utility(self) -> UtilityFunction:
        return self._utility

    @property
    def rule(self) -> GaussLegendreRule:
        return self._rule

    def feasible_interval(self) -> tuple[float, float]:
        """Closed interval of admissible saving levels (margin applied)."""
        return self._feasible

    @abstractmethod
    def return_support(self) -> tuple[float, float]:
        """Bounds of the gross return."""
        ...

    # -- objective and derivatives -------------------------------------------

    @abstractmethod
    def _return_moment(self, saving: float, order: int) -> float:
        """E[x**order * u^(order)(saving * x)] under this model's return."""
        ...

    def _require_feasible(self, saving: float) -> None:
        lo, hi = self._feasible
        if not (lo <= saving <= hi):
            raise DomainError(
                f"saving {saving} outside the feasible interval "
                f"[{lo}, {hi}]")

    def total_utility(self, saving: float) -> float:
        self._require_feasible(saving)
        return (self._utility.eval(self._income - saving, 0)
                + self._return_moment(saving, 0))

    def foc(self, saving: float) -> float:
        """Marginal value of saving; strictly decreasing in saving."""
        self._require_feasible(saving)
        return (-self._utility.eval(self._income - saving, 1)
                + self._return_moment(saving, 1))

    def foc_derivative(self, saving: float) -> float:
        self._require_feasible(saving)
        return (self._utility.eval(self._income - saving, 2)
                + self._return_moment(saving, 2))


class CertainProblem(SavingProblem):
    """Gross return known in advance."""

    def __init__(self, income: float, utility: UtilityFunction, rate: float,
                 rule: GaussLegendreRule | None = None) -> None:
        rate = float(rate)
        if not (math.isfinite(rate) and rate > 0):
            raise InvalidParameterError(
                f"rate must be positive and finite, got {rate}")
        self._rate = rate
        super().__init__(income, utility, rule)

    @property
    def rate(self) -> float:
        return self._rate

    def return_support(self) -> tuple[float, float]:
        return (self._rate, self._rate)

    def _return_moment(self, saving: float, order: int) -> float:
        return (self._rate ** order
                * self._utility.eval(saving * self._rate, order))


class ProbabilisticProblem(SavingProblem):
    """Gross return drawn from a probability distribution."""

    def __init__(self, income: float, utility: UtilityFunction,
                 distribution: RandomReturn,
                 rule: GaussLegendreRule | None = None) -> None:
        self._distribution = distribution
        super().__init__(income, utility, rule)

    @property
    def distribution(self) -> RandomReturn:
        return self._distribution

    def return_support(self) -> tuple[float, float]:
        return self._distribution.support()

    def _return_moment(self, saving: float, order: int) -> float:
        utility = self._utility
        return self._distribution.expect(
            lambda x: x ** order * utility.eval(saving * x, order),
            self._rule)


class PossibilisticProblem(SavingProblem):
    """Gross return described by a weighted fuzzy quantity."""

    def __init__(self, income: float, utility: UtilityFunction,
                 weighting: WeightingFunction, fuzzy_return: FuzzyNumber,
                 rule: GaussLegendreRule | None = None) -> None:
        self._weighting = weighting
        self._fuzzy_return = fuzzy_return
        super().__init__(income, utility, rule)

    @property
    def weighting(self) -> WeightingFunction:
        return self._weighting

    @property
    def fuzzy_return(self) -> FuzzyNumber:
        return self._fuzzy_return

    def return_support(self) -> tuple[float, float]:
        return self._fuzzy_return.support()

    def _return_moment(self, saving: float, order: int) -> float:
        utility = self._utility
        return possibilistic_expected_utility(
            self._weighting, self._fuzzy_return,
            lambda x: x ** order * utility.eval(saving * x, order),
            self._rule)
