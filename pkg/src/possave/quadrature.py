"""Gauss-Legendre quadrature on [0, 1].

All level-set integrals in this package run over the membership level
gamma in [0, 1], so the rule is stored pre-mapped to that interval:
nodes t_i = (x_i + 1)/2 and weights w_i = v_i/2 for the standard
(x_i, v_i) on [-1, 1]. The weights then sum to 1 and the rule integrates
polynomials up to degree 2N - 1 exactly.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import InvalidParameterError

WEIGHT_SUM_TOL = 1e-12

DEFAULT_NODE_COUNT = 64


class GaussLegendreRule:
    """Fixed-order Gauss-Legendre rule on the unit interval."""

    def __init__(self, node_count: int = DEFAULT_NODE_COUNT) -> None:
        if not isinstance(node_count, int) or isinstance(node_count, bool):
            raise InvalidParameterError(
                f"node count must be an integer, got {node_count!r}")
        if node_count < 2:
            raise InvalidParameterError(
                f"node count must be at least 2, got {node_count}")
        raw_nodes, raw_weights = np.polynomial.legendre.leggauss(node_count)
        nodes = 0.5 * (raw_nodes + 1.0)
        weights = 0.5 * raw_weights
        if abs(math.fsum(weights) - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidParameterError(
                f"quadrature weights for N={node_count} do not sum to 1")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        self._node_count = node_count
        self._nodes = nodes
        self._weights = weights

    @property
    def node_count(self) -> int:
        return self._node_count

    @property
    def nodes(self) -> np.ndarray:
        """Nodes in (0, 1), ascending."""
        return self._nodes

    @property
    def weights(self) -> np.ndarray:
        """Positive weights summing to 1."""
        return self._weights

    def integrate(self, fn: Callable[[float], float]) -> float:
        """Approximate the integral of ``fn`` over [0, 1]."""
        return math.fsum(
            w * fn(t) for t, w in zip(self._nodes, self._weights))

    def average(self, fn: Callable[[float], float], lower: float,
                upper: float) -> float:
        """Approximate the mean value of ``fn`` over [lower, upper].

        Equals the expectation of ``fn`` under the uniform density on the
        interval; the 1/(upper - lower) normalization cancels against the
        affine change of variables, leaving the unit-interval weights.
        """
        if not (upper > lower):
            raise InvalidParameterError(
                f"need lower < upper, got [{lower}, {upper}]")
        width = upper - lower
        return math.fsum(
            w * fn(lower + width * t)
            for t, w in zip(self._nodes, self._weights))

    def __repr__(self) -> str:
        return f"GaussLegendreRule(node_count={self._node_count})"


_default_rule: GaussLegendreRule | None = None


def default_rule() -> GaussLegendreRule:
    """Shared 64-node rule used when callers do not pass one."""
    global _default_rule
    if _default_rule is None:
        _default_rule = GaussLegendreRule(DEFAULT_NODE_COUNT)
    return _default_rule
