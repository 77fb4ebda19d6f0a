"""Two-period optimal saving under certain, random, and fuzzy returns.

The package solves and compares three versions of the same saving
problem (a known interest rate, a random one, a fuzzy one described by
level sets) and evaluates the prudence conditions that predict whether
risk raises or lowers optimal saving.
"""

from __future__ import annotations

from .analysis import (ComparisonReport, PredicateResult, build_report,
                       classify_cross_saving, cross_saving_condition,
                       precautionary_foc_term, prudence_condition,
                       sign_with_band)
from .errors import (ConfigError, ConvergenceError,
                     DerivativeUnavailableError, DomainError,
                     InvalidParameterError, MeanMatchError,
                     NoInteriorOptimumError, PossaveError, SingularityError)
from .fuzzy import (CrispInterval, CrispPoint, FuzzyNumber, SampledNumber,
                    TrapezoidalNumber, TriangularNumber, WeightingFunction,
                    approx_expected_utility, possibilistic_expected_utility,
                    possibilistic_mean, possibilistic_variance)
from .models import (CertainProblem, PossibilisticProblem,
                     ProbabilisticProblem, SavingProblem)
from .quadrature import GaussLegendreRule
from .smooth import SmoothFunction
from .solver import SolveResult, solve_optimum
from .stochastic import (DiscreteReturn, RandomReturn, UniformReturn,
                         approx_expect)
from .utility import (CARAUtility, CRRAUtility, LogUtility,
                      QuadraticUtility, UtilityFunction, absolute_prudence,
                      crra_family, relative_prudence)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "PossaveError", "InvalidParameterError", "DomainError",
    "DerivativeUnavailableError", "SingularityError", "MeanMatchError",
    "NoInteriorOptimumError", "ConvergenceError", "ConfigError",
    # quadrature and functions
    "GaussLegendreRule", "SmoothFunction",
    # fuzzy quantities
    "WeightingFunction", "FuzzyNumber", "CrispPoint", "CrispInterval",
    "TriangularNumber", "TrapezoidalNumber", "SampledNumber",
    "possibilistic_expected_utility", "possibilistic_mean",
    "possibilistic_variance", "approx_expected_utility",
    # utilities
    "UtilityFunction", "CRRAUtility", "LogUtility", "CARAUtility",
    "QuadraticUtility", "crra_family", "absolute_prudence",
    "relative_prudence",
    # random returns
    "RandomReturn", "UniformReturn", "DiscreteReturn", "approx_expect",
    # models and solver
    "SavingProblem", "CertainProblem", "ProbabilisticProblem",
    "PossibilisticProblem", "SolveResult", "solve_optimum",
    # analysis
    "ComparisonReport", "PredicateResult", "build_report",
    "prudence_condition", "cross_saving_condition", "classify_cross_saving",
    "precautionary_foc_term", "sign_with_band",
]
