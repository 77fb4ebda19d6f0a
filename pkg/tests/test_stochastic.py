"""Random returns: moments, expectations, validation."""

from __future__ import annotations

import math

import numpy as np
import pytest

from possave.errors import DerivativeUnavailableError, InvalidParameterError
from possave.smooth import SmoothFunction
from possave.stochastic import DiscreteReturn, UniformReturn, approx_expect
from possave.utility import CRRAUtility, QuadraticUtility

TWO_POINT = DiscreteReturn(((1.0, 0.5), (1.2, 0.5)))


class TestUniformReturn:

    def test_moments(self):
        dist = UniformReturn(1.0, 1.2)
        assert abs(dist.mean() - 1.1) <= 1e-15
        assert abs(dist.variance() - 1.0 / 300.0) <= 1e-15
        assert dist.support() == (1.0, 1.2)

    def test_expectation_of_identity_is_the_mean(self):
        dist = UniformReturn(1.0, 1.2)
        assert abs(dist.expect(lambda x: x) - dist.mean()) <= 1e-14

    def test_expectation_of_square(self):
        dist = UniformReturn(1.0, 1.2)
        value = dist.expect(lambda x: x * x)
        assert abs(value - (dist.variance() + 1.21)) <= 1e-14
        assert abs(value - 1.2133333333333334) <= 1e-13

    def test_marginal_return_moment_matches_log_closed_form(self):
        # E[x * u'(0.5 x)] for u(x) = -1/x is E[4/x] = 20 ln 1.2
        dist = UniformReturn(1.0, 1.2)
        u = CRRAUtility(2.0)
        value = dist.expect(lambda x: x * u.eval(0.5 * x, 1))
        assert abs(value - 20.0 * math.log(1.2)) <= 1e-12

    def test_expectation_against_monte_carlo(self):
        dist = UniformReturn(1.0, 1.2)
        quadrature = dist.expect(lambda x: 4.0 / x)
        draws = 4.0 / np.random.default_rng(123456).uniform(
            1.0, 1.2, size=1_000_000)
        spread = draws.std(ddof=1) / math.sqrt(draws.size)
        assert abs(quadrature - draws.mean()) <= 3.0 * spread

    @pytest.mark.parametrize("bounds", [
        (1.2, 1.0), (1.1, 1.1), (0.0, 1.2), (-0.5, 1.2),
        (math.inf, 2.0), (1.0, math.nan),
    ])
    def test_rejects_bad_bounds(self, bounds):
        with pytest.raises(InvalidParameterError):
            UniformReturn(*bounds)


class TestDiscreteReturn:

    def test_two_point_moments(self):
        assert TWO_POINT.mean() == pytest.approx(1.1, abs=1e-15)
        assert TWO_POINT.variance() == pytest.approx(0.01, abs=1e-15)
        assert TWO_POINT.support() == (1.0, 1.2)

    def test_expectation_is_the_weighted_sum(self):
        value = TWO_POINT.expect(lambda x: x * x)
        assert abs(value - (0.5 * 1.0 + 0.5 * 1.44)) <= 1e-15

    def test_one_atom_collapses_to_certainty(self):
        point = DiscreteReturn(((1.1, 1.0),))
        assert point.mean() == 1.1
        assert point.variance() == 0.0
        assert point.support() == (1.1, 1.1)

    def test_rejects_empty_atoms(self):
        with pytest.raises(InvalidParameterError):
            DiscreteReturn(())

    @pytest.mark.parametrize("atoms", [
        ((0.0, 1.0),),                      # zero return
        ((-1.0, 1.0),),                     # negative return
        ((1.0, -0.2), (1.2, 1.2)),          # negative probability
        ((1.0, 0.5), (1.2, 0.6)),           # probabilities off
    ])
    def test_rejects_bad_atoms(self, atoms):
        with pytest.raises(InvalidParameterError):
            DiscreteReturn(atoms)


class TestApproxExpect:

    def test_exact_for_quadratic_functions(self):
        square = SmoothFunction(func=lambda x: 3.0 * x * x - x,
                                second=lambda x: 6.0)
        for dist in (UniformReturn(1.0, 1.2), TWO_POINT):
            exact = dist.expect(square)
            assert abs(approx_expect(dist, square) - exact) <= 1e-13

    def test_quadratic_utility_matches_exactly(self):
        u = QuadraticUtility(0.1)
        dist = UniformReturn(1.0, 1.4)
        assert abs(approx_expect(dist, u) - dist.expect(u)) <= 1e-13

    def test_close_for_smooth_utilities(self):
        u = CRRAUtility(2.0)
        dist = UniformReturn(1.0, 1.2)
        exact = dist.expect(u)
        assert abs(approx_expect(dist, u) - exact) <= 1e-4
        assert approx_expect(dist, u) != exact

    def test_plain_callable_is_rejected(self):
        with pytest.raises(DerivativeUnavailableError):
            approx_expect(TWO_POINT, lambda x: x * x)
