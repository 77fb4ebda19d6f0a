"""Root finding for the saving first-order condition.

The FOC of every model here is continuous and strictly decreasing on the
feasible interval, so an interior optimum is a bracketed sign change.
The solver bisects, accelerated by Newton steps from the analytic FOC
derivative whenever the step stays inside the current bracket, and fails
loudly when the FOC never changes sign (a corner, not an interior
optimum) or the iteration budget runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (ConvergenceError, InvalidParameterError,
                     NoInteriorOptimumError)
from .models import SavingProblem

DEFAULT_TOL_S = 1e-12
DEFAULT_TOL_F = 1e-10
DEFAULT_MAX_ITER = 200


@dataclass(frozen=True)
class SolveResult:
    """Solved optimum with convergence diagnostics."""

    s_opt: float
    foc_residual: float
    iterations: int
    bracket: tuple[float, float]
    converged: bool


def solve_optimum(problem: SavingProblem,
                  tol_s: float = DEFAULT_TOL_S,
                  tol_f: float = DEFAULT_TOL_F,
                  max_iter: int = DEFAULT_MAX_ITER,
                  bracket: tuple[float, float] | None = None) -> SolveResult:
    """Find the interior maximizer of a saving problem.

    ``bracket`` overrides the initial search interval (it must lie inside
    the feasible interval and still bracket the root); by default the
    whole feasible interval is searched. Stops when the FOC residual
    falls below ``tol_f`` or the bracket narrows below ``tol_s``.
    """
    if tol_s <= 0 or tol_f <= 0:
        raise InvalidParameterError("tolerances must be positive")
    if max_iter < 1:
        raise InvalidParameterError("max_iter must be at least 1")
    lo, hi = bracket if bracket is not None else problem.feasible_interval()
    if not (lo < hi):
        raise InvalidParameterError(
            f"bracket must satisfy lo < hi, got [{lo}, {hi}]")

    foc_lo = problem.foc(lo)
    foc_hi = problem.foc(hi)
    if abs(foc_lo) <= tol_f:
        return SolveResult(lo, foc_lo, 0, (lo, hi), True)
    if abs(foc_hi) <= tol_f:
        return SolveResult(hi, foc_hi, 0, (lo, hi), True)
    if foc_lo < 0 and foc_hi < 0:
        raise NoInteriorOptimumError(
            f"marginal value of saving is negative across [{lo}, {hi}]; "
            f"the objective peaks at the lower boundary", direction="lower")
    if foc_lo > 0 and foc_hi > 0:
        raise NoInteriorOptimumError(
            f"marginal value of saving is positive across [{lo}, {hi}]; "
            f"the objective peaks at the upper boundary", direction="upper")

    # invariant below: foc(lo) > 0 > foc(hi), since the FOC decreases
    current = 0.5 * (lo + hi)
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        residual = problem.foc(current)
        if abs(residual) <= tol_f:
            return SolveResult(current, residual, iterations, (lo, hi), True)
        if residual > 0:
            lo = current
        else:
            hi = current
        if hi - lo <= tol_s:
            return SolveResult(current, residual, iterations, (lo, hi),
                               abs(residual) <= tol_f or hi - lo <= tol_s)
        slope = problem.foc_derivative(current)
        step = current - residual / slope if slope != 0 else math.nan
        if lo < step < hi:
            current = step
        else:
            current = 0.5 * (lo + hi)

    raise ConvergenceError(
        f"no convergence within {max_iter} iterations; best bracket "
        f"[{lo}, {hi}]", bracket=(lo, hi), iterations=max_iter)
