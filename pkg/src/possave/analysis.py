"""Cross-model comparison of optimal saving and its sign predicates.

Solves the certain, probabilistic, and possibilistic problems on matched
return descriptions (all three means equal) and reports the
precautionary differences

    prob  = s_probabilistic - s_certain
    poss  = s_possibilistic - s_certain
    cross = s_possibilistic - s_probabilistic

next to the indicator quantities that are supposed to predict their
signs at small risk:

    prudence condition     relative prudence at the certain-model
                           second-period consumption versus the
                           threshold 2;
    variance-gap condition sign of (2 u'' + R s u''') * (var_poss -
                           var_prob) at the probabilistic optimum;
    cross classification   extra saving when prudence and the variance
                           gap point the same way, reduced saving when
                           they oppose, indeterminate near either tie.

All predicates are three-valued: ties within a band around the
threshold are reported as boundary/indeterminate rather than forced to
a side. The report carries both the predicate outcomes and the directly
solved signs, so disagreements stay visible instead of being averaged
away.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MeanMatchError
from .fuzzy import (FuzzyNumber, WeightingFunction, possibilistic_mean,
                    possibilistic_variance)
from .models import (CertainProblem, PossibilisticProblem,
                     ProbabilisticProblem)
from .quadrature import GaussLegendreRule, default_rule
from .solver import (DEFAULT_MAX_ITER, DEFAULT_TOL_F, DEFAULT_TOL_S,
                     solve_optimum)
from .stochastic import RandomReturn
from .utility import UtilityFunction, relative_prudence

#: how closely the three return means must agree
MEAN_MATCH_TOL = 1e-9

#: tie band for prudence-vs-2 comparisons and solved-sign classification
SIGN_BAND = 1e-9

#: tie band for the variance-gap product
PRODUCT_BAND = 1e-12

HOLDS = "holds"
FAILS = "fails"
BOUNDARY = "boundary"

EXTRA_SAVING = "extra_saving"
NO_EXTRA_SAVING = "no_extra_saving"
INDETERMINATE = "indeterminate"

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class PredicateResult:
    """Three-valued comparison with the two compared quantities attached."""

    outcome: str
    lhs: float
    rhs: float


def sign_with_band(value: float, band: float = SIGN_BAND) -> str:
    if value > band:
        return POSITIVE
    if value < -band:
        return NEGATIVE
    return INDETERMINATE


def prudence_condition(utility: UtilityFunction, mean_return: float,
                       saving: float,
                       band: float = SIGN_BAND) -> PredicateResult:
    """Relative prudence at mean_return * saving versus the threshold 2.

    "holds" predicts extra saving under small risk, "fails" predicts
    reduced saving, "boundary" stays within the tie band.
    """
    index = relative_prudence(utility, mean_return * saving)
    if index > 2.0 + band:
        outcome = HOLDS
    elif index < 2.0 - band:
        outcome = FAILS
    else:
        outcome = BOUNDARY
    return PredicateResult(outcome, index, 2.0)


def _curvature_adjustment(utility: UtilityFunction, mean_return: float,
                          saving: float) -> float:
    """2 u''(sR) + R s u'''(sR): the curvature of x -> x u'(s x) at R,
    divided by s. Positive exactly when relative prudence exceeds 2."""
    consumption = saving * mean_return
    return (2.0 * utility.eval(consumption, 2)
            + consumption * utility.eval(consumption, 3))


def cross_saving_condition(utility: UtilityFunction, mean_return: float,
                           saving: float, var_poss: float, var_prob: float,
                           band: float = PRODUCT_BAND) -> PredicateResult:
    """Sign of (2 u'' + R s u''') * (var_poss - var_prob) at ``saving``.

    A positive product predicts the possibilistic optimum above the
    probabilistic one; the tie band absorbs numerically zero products.
    """
    product = (_curvature_adjustment(utility, mean_return, saving)
               * (var_poss - var_prob))
    if product > band:
        outcome = HOLDS
    elif product < -band:
        outcome = FAILS
    else:
        outcome = BOUNDARY
    return PredicateResult(outcome, product, 0.0)


def classify_cross_saving(utility: UtilityFunction, mean_return: float,
                          saving: float, var_poss: float, var_prob: float,
                          prudence_band: float = SIGN_BAND,
                          variance_band: float = PRODUCT_BAND
                          ) -> PredicateResult:
    """Extra/no-extra cross-model saving from prudence and the variance gap.

    Extra saving when relative prudence sits strictly above 2 and the
    level-set variance strictly exceeds the probabilistic one, or both
    are strictly reversed; no extra saving when the two point in
    opposite directions; indeterminate inside either tie band. The lhs
    reported is (prudence - 2) * (var_poss - var_prob), whose sign
    encodes the same disjunction.
    """
    index = relative_prudence(utility, mean_return * saving)
    gap = var_poss - var_prob
    if abs(index - 2.0) <= prudence_band or abs(gap) <= variance_band:
        outcome = INDETERMINATE
    elif (index - 2.0) * gap > 0:
        outcome = EXTRA_SAVING
    else:
        outcome = NO_EXTRA_SAVING
    return PredicateResult(outcome, (index - 2.0) * gap, 0.0)


def precautionary_foc_term(utility: UtilityFunction, mean_return: float,
                           saving: float, variance: float) -> float:
    """Second-order size of the risk term in the FOC at ``saving``:

        variance / 2 * s * (2 u''(s R) + R s u'''(s R)).

    With the level-set variance it estimates the possibilistic FOC at
    the certain optimum; with the variance gap var_poss - var_prob it
    estimates it at the probabilistic optimum. Its sign is the predicted
    direction of the corresponding saving adjustment.
    """
    return (0.5 * variance * saving
            * _curvature_adjustment(utility, mean_return, saving))


@dataclass(frozen=True)
class ComparisonReport:
    """Solved optima, precautionary differences, indicators, predicates."""

    income: float
    mean_return: float
    s_certain: float
    s_probabilistic: float
    s_possibilistic: float
    precautionary_prob: float
    precautionary_poss: float
    precautionary_cross: float
    var_poss: float
    var_prob: float
    prudence_at_certain: float
    prudence_at_probabilistic: float
    prudence_predicate: PredicateResult
    variance_gap_predicate: PredicateResult
    cross_classification: PredicateResult
    sign_prob: str
    sign_poss: str
    sign_cross: str


def build_report(income: float,
                 utility: UtilityFunction,
                 mean_return: float,
                 distribution: RandomReturn,
                 weighting: WeightingFunction,
                 fuzzy_return: FuzzyNumber,
                 rule: GaussLegendreRule | None = None,
                 *,
                 tol_s: float = DEFAULT_TOL_S,
                 tol_f: float = DEFAULT_TOL_F,
                 max_iter: int = DEFAULT_MAX_ITER,
                 band: float = SIGN_BAND) -> ComparisonReport:
    """Solve the three matched problems and assemble the comparison.

    The probabilistic and possibilistic descriptions must share the
    certain model's mean return to within MEAN_MATCH_TOL; otherwise the
    three optima would differ for first-order reasons and the
    precautionary differences would be meaningless.
    """
    rule = rule or default_rule()
    poss_mean = possibilistic_mean(weighting, fuzzy_return, rule)
    prob_mean = distribution.mean()
    if (abs(poss_mean - mean_return) > MEAN_MATCH_TOL
            or abs(prob_mean - mean_return) > MEAN_MATCH_TOL):
        raise MeanMatchError(
            f"return means disagree: certain {mean_return!r}, "
            f"probabilistic {prob_mean!r}, possibilistic {poss_mean!r}",
            certain=mean_return, probabilistic=prob_mean,
            possibilistic=poss_mean)

    certain = CertainProblem(income, utility, mean_return, rule)
    probabilistic = ProbabilisticProblem(income, utility, distribution, rule)
    possibilistic = PossibilisticProblem(income, utility, weighting,
                                         fuzzy_return, rule)
    s_certain = solve_optimum(certain, tol_s, tol_f, max_iter).s_opt
    s_prob = solve_optimum(probabilistic, tol_s, tol_f, max_iter).s_opt
    s_poss = solve_optimum(possibilistic, tol_s, tol_f, max_iter).s_opt

    var_poss = possibilistic_variance(weighting, fuzzy_return, rule)
    var_prob = distribution.variance()

    return ComparisonReport(
        income=income,
        mean_return=mean_return,
        s_certain=s_certain,
        s_probabilistic=s_prob,
        s_possibilistic=s_poss,
        precautionary_prob=s_prob - s_certain,
        precautionary_poss=s_poss - s_certain,
        precautionary_cross=s_poss - s_prob,
        var_poss=var_poss,
        var_prob=var_prob,
        prudence_at_certain=relative_prudence(utility,
                                              mean_return * s_certain),
        prudence_at_probabilistic=relative_prudence(utility,
                                                    mean_return * s_prob),
        prudence_predicate=prudence_condition(utility, mean_return,
                                              s_certain, band),
        variance_gap_predicate=cross_saving_condition(
            utility, mean_return, s_prob, var_poss, var_prob),
        cross_classification=classify_cross_saving(
            utility, mean_return, s_prob, var_poss, var_prob,
            prudence_band=band),
        sign_prob=sign_with_band(s_prob - s_certain, band),
        sign_poss=sign_with_band(s_poss - s_certain, band),
        sign_cross=sign_with_band(s_poss - s_prob, band),
    )
