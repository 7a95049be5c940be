import math

import numpy as np
import pytest

from rigidkit.errors import DimensionMismatch, ValidationError
from rigidkit.poly import (
    MultiPoly,
    basis_size,
    chebyshev,
    compose,
    derivative_norm_pointwise,
    derivatives_of_order,
    eval_poly,
    monomials,
    partial_derivative,
    random_poly,
)


def x2_plus_y2():
    return MultiPoly(2, {(2, 0): 1.0, (0, 2): 1.0})


class TestMultiPoly:
    def test_zero_coefficients_never_stored(self):
        p = MultiPoly(2, {(1, 0): 0.0, (0, 1): 2.0})
        assert (1, 0) not in p.terms
        q = MultiPoly(1, {(1,): 1.0}) - MultiPoly(1, {(1,): 1.0})
        assert q.is_zero() and q.terms == {}

    def test_degree(self):
        assert x2_plus_y2().degree == 2
        assert MultiPoly.constant(2, 3.0).degree == 0
        assert MultiPoly(2, {}).degree == 0

    def test_exponent_length_enforced(self):
        with pytest.raises(DimensionMismatch):
            MultiPoly(2, {(1,): 1.0})

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValidationError):
            MultiPoly(1, {(-1,): 1.0})

    def test_arithmetic(self):
        x = MultiPoly.variable(2, 0)
        y = MultiPoly.variable(2, 1)
        p = (x + y) * (x - y)
        assert p == MultiPoly(2, {(2, 0): 1.0, (0, 2): -1.0})
        assert (x**3).terms == {(3, 0): 1.0}
        assert (2 * x - x - x).is_zero()

    def test_mixed_dim_arithmetic_rejected(self):
        with pytest.raises(DimensionMismatch):
            MultiPoly.variable(2, 0) + MultiPoly.variable(1, 0)

    def test_coefficient_norm(self):
        p = MultiPoly(1, {(0,): -5.0, (2,): 3.0})
        assert p.coefficient_norm() == 5.0
        assert MultiPoly(1, {}).coefficient_norm() == 0.0

    def test_json_round_trip(self):
        p = MultiPoly(2, {(2, 0): 1.5, (0, 1): -2.0})
        assert MultiPoly.from_json_dict(p.to_json_dict()) == p

    def test_malformed_json(self):
        with pytest.raises(ValidationError):
            MultiPoly.from_json_dict({"nvars": 1})


class TestEval:
    def test_sum_of_squares(self):
        assert eval_poly(x2_plus_y2(), (1, 1)) == 2.0

    def test_constant(self):
        p = MultiPoly.constant(3, 5.0)
        assert p((0.1, -0.2, 0.9)) == 5.0

    def test_cubic(self):
        p = MultiPoly(1, {(3,): 2.0, (1,): -3.0})
        assert p([2.0]) == 10.0

    def test_vectorized(self):
        p = x2_plus_y2()
        xs = np.array([0.0, 1.0, 2.0])
        ys = np.array([1.0, 1.0, 0.0])
        assert np.array_equal(eval_poly(p, [xs, ys]), [1.0, 2.0, 4.0])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            eval_poly(x2_plus_y2(), (1.0,))


class TestDerivatives:
    def test_product_rule_example(self):
        p = MultiPoly(2, {(2, 1): 1.0})  # x^2 y
        assert partial_derivative(p, 0) == MultiPoly(2, {(1, 1): 2.0})

    def test_derivative_of_missing_variable_is_zero(self):
        p = MultiPoly(2, {(2, 0): 1.0})
        assert partial_derivative(p, 1).is_zero()

    def test_cubic_derivative(self):
        p = MultiPoly(1, {(3,): 1.0, (1,): -3.0})
        assert partial_derivative(p, 0) == MultiPoly(1, {(2,): 3.0, (0,): -3.0})

    def test_partials_commute_exactly(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            p = random_poly(2, 5, rng)
            pxy = partial_derivative(partial_derivative(p, 0), 1)
            pyx = partial_derivative(partial_derivative(p, 1), 0)
            assert pxy.terms == pyx.terms

    def test_derivatives_of_order_enumerates_all_multi_indices(self):
        p = x2_plus_y2()
        pairs = derivatives_of_order(p, 2)
        assert sorted(alpha for alpha, _ in pairs) == [(0, 2), (1, 1), (2, 0)]
        by_alpha = {alpha: q for alpha, q in pairs}
        assert by_alpha[(2, 0)] == MultiPoly.constant(2, 2.0)
        assert by_alpha[(1, 1)].is_zero()


class TestDerivativeNorm:
    def test_second_derivative_of_square(self):
        p = MultiPoly(1, {(2,): 1.0})
        assert derivative_norm_pointwise(p, 2, [0.3]) == 2.0

    def test_mixed_term_counted_once(self):
        p = MultiPoly(2, {(1, 1): 1.0})  # xy: orders (2,0),(1,1),(0,2) -> 0,1,0
        assert derivative_norm_pointwise(p, 2, (0.2, -0.4)) == 1.0

    def test_third_derivative_of_cube(self):
        p = MultiPoly(1, {(3,): 1.0})
        assert derivative_norm_pointwise(p, 3, [0.0]) == 6.0

    def test_vanishes_above_degree(self):
        rng = np.random.default_rng(11)
        p = random_poly(2, 3, rng)
        for k in range(p.degree + 1, p.degree + 4):
            assert derivative_norm_pointwise(p, k, (0.5, 0.5)) == 0.0


class TestCompose:
    def test_linear_with_parabola(self):
        f = MultiPoly(2, {(1, 0): 1.0, (0, 1): 1.0})
        g = compose(f, [MultiPoly(1, {(1,): 1.0}), MultiPoly(1, {(2,): 1.0})])
        assert g == MultiPoly(1, {(1,): 1.0, (2,): 1.0})

    def test_degree_multiplies(self):
        f = MultiPoly(1, {(2,): 1.0})
        g = compose(f, [MultiPoly(1, {(2,): 1.0})])
        assert g == MultiPoly(1, {(4,): 1.0})
        assert g.degree == 4

    def test_numeric_cross_check(self):
        # cos-like truncated series as one component
        cos_approx = MultiPoly(1, {(0,): 1.0, (2,): -0.5, (4,): 1.0 / 24.0})
        ident = MultiPoly(1, {(1,): 1.0})
        f = x2_plus_y2()
        g = compose(f, [cos_approx, ident])
        ts = np.linspace(-1.0, 1.0, 100)
        direct = np.array([f((cos_approx([t]), t)) for t in ts])
        composed = eval_poly(g, [ts])
        assert np.max(np.abs(composed - direct)) <= 1e-9 * max(1.0, np.max(np.abs(direct)))

    def test_wrong_component_count(self):
        with pytest.raises(DimensionMismatch):
            compose(x2_plus_y2(), [MultiPoly(1, {(1,): 1.0})])


class TestChebyshev:
    def test_degree_zero(self):
        assert chebyshev(0) == MultiPoly.constant(1, 1.0)

    def test_growth_values(self):
        assert chebyshev(2)([3.0]) == 17.0
        assert chebyshev(3)([2.0]) == 26.0

    @pytest.mark.parametrize("d", [1, 2, 3, 5, 8])
    def test_bounded_on_interval(self, d):
        ts = np.linspace(-1.0, 1.0, 1000)
        vals = eval_poly(chebyshev(d), [ts])
        assert np.max(np.abs(vals)) <= 1.0 + 1e-12

    @pytest.mark.parametrize("d", [1, 2, 3, 5, 8])
    def test_cosine_identity(self, d):
        thetas = np.linspace(0.0, np.pi, 100)
        vals = eval_poly(chebyshev(d), [np.cos(thetas)])
        assert np.max(np.abs(vals - np.cos(d * thetas))) <= 1e-9


class TestBasis:
    def test_sizes(self):
        assert basis_size(1, 3) == 4
        assert basis_size(2, 2) == 6
        assert basis_size(2, 6) == 28

    def test_matches_monomial_enumeration(self):
        for n, d in [(1, 4), (2, 3), (3, 2)]:
            assert len(monomials(n, d)) == basis_size(n, d)
            assert basis_size(n, d) == math.comb(n + d, n)

    def test_monomials_graded_lex(self):
        ms = monomials(2, 2)
        assert ms == sorted(ms, key=lambda e: (sum(e), e))
        assert all(len(e) == 2 and sum(e) <= 2 for e in ms)
