import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from monogenic_chain.clifford import CliffordContext, HalfSpacePoint
from monogenic_chain.constants import SymbolicConstant, sphere_area
from monogenic_chain.distributions import boundary_value, evaluate_function
from monogenic_chain.errors import DimensionTooSmall, DomainError, UnsupportedRequest
from monogenic_chain.kernels import (
    NEAR_AXIS,
    BivarPoly,
    ChainKernel,
    eval_C,
    eval_center,
    eval_downstream,
    eval_exact,
    eval_kernel,
    eval_upstream,
    p_gegenbauer,
    p_hypergeometric,
    poly_P,
    poly_P_from_Q,
    poly_Q,
    poly_Q_from_P,
    q_gegenbauer,
    q_hypergeometric,
)

M = sympy.Symbol("m")
T, S = sympy.symbols("t s", positive=True)


def sigma(n: int) -> float:
    return float(sphere_area(n))


class TestPolynomials:
    def test_low_order_examples(self):
        assert poly_P(1, M) == BivarPoly({(1, 0): 1})
        assert poly_P(2, M) == BivarPoly({(2, 0): -M, (0, 1): 1})
        assert poly_P(3, M) == BivarPoly({(3, 0): M * (M + 1), (1, 1): -3 * (M + 1)})
        assert poly_Q(0, M) == BivarPoly({(0, 0): -1})
        assert poly_Q(1, M) == BivarPoly({(1, 0): M + 1})
        assert poly_Q(2, M) == BivarPoly({(2, 0): -(M + 1) * (M + 2), (0, 1): M + 1})

    @pytest.mark.parametrize("k", range(1, 9))
    def test_homogeneous_degree(self, k):
        assert poly_P(k, 5).is_homogeneous(k)
        assert poly_Q(k, 5).is_homogeneous(k)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_intertwined_relations(self, k):
        assert poly_Q_from_P(k, M) == poly_Q(k, M)
        assert poly_P_from_Q(k, M) == poly_P(k + 1, M)

    @pytest.mark.parametrize("m", [2, 3, 4, 7])
    @pytest.mark.parametrize("k", range(1, 6))
    def test_against_repeated_differentiation(self, m, k):
        # A_{-k} and B_{-k} are x0-derivatives of the Cauchy pair
        a1 = T / (T**2 + S) ** sympy.Rational(m + 1, 2)
        b1 = -1 / (T**2 + S) ** sympy.Rational(m + 1, 2)
        scale = (T**2 + S) ** sympy.Rational(m + 2 * k - 1, 2)
        p_ref = sympy.simplify(sympy.diff(a1, T, k - 1) * scale)
        q_ref = sympy.simplify(sympy.diff(b1, T, k - 1) * scale)
        assert sympy.expand(p_ref - poly_P(k, m)(T, S)) == 0
        assert sympy.expand(q_ref - poly_Q(k - 1, m)(T, S)) == 0

    def test_fixed_m_matches_symbolic(self):
        for k in range(1, 7):
            sym = poly_P(k, M)
            fixed = poly_P(k, 4)
            for key, c in sym.terms.items():
                assert Fraction(int(sympy.sympify(c).subs(M, 4))) == fixed.coefficient(*key)

    def test_domain(self):
        with pytest.raises(DomainError):
            poly_P(0, 3)
        with pytest.raises(DomainError):
            poly_Q(-1, 3)


rationals = st.fractions(Fraction(1, 7), 5, max_denominator=9)


class TestClosedForms:
    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 8), st.integers(2, 6), rationals, rationals)
    def test_equal_to_recurrence(self, k, m, t, u):
        s = u * u
        assert p_gegenbauer(k, m, t, u) == poly_P(k, m)(t, s)
        assert p_hypergeometric(k, m, t, s) == poly_P(k, m)(t, s)
        assert q_gegenbauer(k, m, t, u) == poly_Q(k - 1, m)(t, s)
        assert q_hypergeometric(k, m, t, s) == poly_Q(k - 1, m)(t, s)


def random_points(m, count, seed=1):
    rng = np.random.default_rng(seed)
    return [HalfSpacePoint(float(rng.uniform(0.5, 2)), tuple(rng.uniform(-1, 1, m))) for _ in range(count)]


class TestDownstream:
    def test_cauchy_on_axis(self):
        a, b = eval_downstream(-1, 3, HalfSpacePoint(1.0, (0.0, 0.0, 0.0)))
        assert a == pytest.approx(1 / math.pi**2, rel=1e-15)
        assert not np.any(b)

    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_zero_cone_of_a_minus_two(self, m):
        x0 = 0.7
        p = HalfSpacePoint(x0, (x0 * math.sqrt(m),) + (0.0,) * (m - 1))
        assert abs(eval_downstream(-2, m, p)[0]) < 1e-14

    def test_exact_cauchy(self):
        a, b = eval_exact(-1, 3, HalfSpacePoint(Fraction(1), (Fraction(0),) * 3))
        assert a == SymbolicConstant(Fraction(1), -4)
        a, b = eval_exact(-2, 3, HalfSpacePoint(Fraction(3), (Fraction(4), Fraction(0), Fraction(0))))
        # (2/sigma_4) (-3*9 + 16) / 5^6
        assert a == SymbolicConstant(Fraction(2 * (-27 + 16), 2 * 5**6), -4)

    def test_exact_needs_rational_norm(self):
        with pytest.raises(UnsupportedRequest):
            eval_exact(-1, 3, HalfSpacePoint(Fraction(1), (Fraction(1), Fraction(0), Fraction(0))))

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_cauchy_kernel_formula(self, m):
        ctx = CliffordContext(m)
        for p in random_points(m, 100):
            x = p.array()
            expected = (ctx.scalar(x[0]) - ctx.e0bar() * ctx.boundary_vector(x[1:])) / (
                sigma(m + 1) * p.norm ** (m + 1)
            )
            assert (eval_C(-1, m, p) - expected).norm() < 1e-14


class TestCenter:
    def test_green_function_on_axis(self):
        a, b = eval_center(3, HalfSpacePoint(1.0, (0.0, 0.0, 0.0)))
        # -(2/(m-1)) / sigma_{m+1} with sigma_4 = 2 pi^2
        assert a == pytest.approx(-1 / (2 * math.pi**2), rel=1e-15)
        assert not np.any(b)
        assert eval_exact(0, 3, HalfSpacePoint(Fraction(1), (Fraction(0),) * 3))[0] == SymbolicConstant(
            Fraction(-1, 2), -4
        )

    @pytest.mark.parametrize("m", [2, 3, 6])
    def test_green_function_derivative(self, m):
        # d/dx0 A_0 = A_{-1} forces the normalisation of A_0
        x0, s = sympy.symbols("x0 s", positive=True)
        a0 = -sympy.Rational(2, m - 1) / (x0**2 + s) ** sympy.Rational(m - 1, 2)
        a_minus_1 = 2 * x0 / (x0**2 + s) ** sympy.Rational(m + 1, 2)
        assert sympy.simplify(sympy.diff(a0, x0) - a_minus_1) == 0
        p = HalfSpacePoint(0.8, (0.6,) + (0.0,) * (m - 1))
        expected = float(a0.subs({x0: 0.8, s: 0.36})) / sigma(m + 1)
        assert eval_center(m, p)[0] == pytest.approx(expected, rel=1e-14)

    def test_c0_on_axis(self):
        p = HalfSpacePoint(1.3, (0.0, 0.0, 0.0))
        c = eval_C(0, 3, p)
        assert c == CliffordContext(3).scalar(0.5 * eval_center(3, p)[0])


def upstream_by_quadrature(n: int, kind: str, m: int, x0: float, xv) -> np.ndarray:
    """``K_n(x0, x) = -int_{x0}^inf K_{n-1}(t, x) dt`` for kernels decaying in x0."""

    def component(j):
        def integrand(t):
            val = eval_kernel(n - 1, m, HalfSpacePoint(t, xv), kind)
            return val if kind == "A" else val[j]

        return -quad(integrand, x0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=400)[0]

    if kind == "A":
        return np.array([component(0)])
    return np.array([component(j) for j in range(m)])


class TestUpstream:
    def test_a1_on_axis(self):
        a, b = eval_upstream(1, 4, HalfSpacePoint(1.0, (0.0,) * 4))
        # 2 / ((m-1)(m-2)) / sigma_{m+1} with sigma_5 = 8 pi^2 / 3
        assert a == pytest.approx(1 / (8 * math.pi**2), rel=1e-14)
        assert not np.any(b)

    @pytest.mark.parametrize("n, m", [(1, 3), (1, 4), (2, 4), (2, 5)])
    def test_b_vanishes_on_axis(self, n, m):
        assert not np.any(eval_upstream(n, m, HalfSpacePoint(0.9, (0.0,) * m))[1])

    @pytest.mark.parametrize(
        "n, kind, m",
        [(1, "A", 3), (1, "A", 4), (1, "B", 2), (1, "B", 3), (2, "A", 4), (2, "A", 5), (2, "B", 3), (2, "B", 4)],
    )
    @pytest.mark.parametrize("ratio", [0.2, 0.45, 0.55, 1.5, 4.0])
    def test_against_quadrature(self, n, kind, m, ratio):
        x0 = 0.9
        xv = (ratio * x0 * 0.6, -ratio * x0 * 0.8) + (0.0,) * (m - 2)
        got = np.atleast_1d(eval_kernel(n, m, HalfSpacePoint(x0, xv), kind))
        ref = upstream_by_quadrature(n, kind, m, x0, xv)
        np.testing.assert_allclose(got, ref, rtol=1e-9, atol=1e-12)

    @pytest.mark.parametrize("n, m", [(1, 3), (1, 5), (2, 4), (2, 6)])
    def test_continuous_across_axis_switch(self, n, m):
        x0 = 1.1
        lo = HalfSpacePoint(x0, (x0 * NEAR_AXIS * (1 - 1e-9),) + (0.0,) * (m - 1))
        hi = HalfSpacePoint(x0, (x0 * NEAR_AXIS * (1 + 1e-9),) + (0.0,) * (m - 1))
        (a_lo, b_lo), (a_hi, b_hi) = eval_kernel(n, m, lo), eval_kernel(n, m, hi)
        assert a_lo == pytest.approx(a_hi, rel=1e-8)
        np.testing.assert_allclose(b_lo, b_hi, rtol=1e-8)

    def test_b2_tends_to_boundary_value(self):
        m, xv = 4, (0.6, 0.0, 0.8, 0.0)
        _, limit = evaluate_function(boundary_value(2, m)[1], np.array(xv))
        errs = [np.abs(eval_kernel(2, m, HalfSpacePoint(x0, xv), "B") - limit).max() for x0 in (1e-2, 1e-3, 1e-4)]
        assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-4

    @pytest.mark.parametrize("n, kind, m", [(1, "A", 2), (2, "A", 3), (2, "B", 2)])
    def test_dimension_floor(self, n, kind, m):
        with pytest.raises(DimensionTooSmall):
            eval_kernel(n, m, HalfSpacePoint(1.0, (0.5,) * m), kind)
        with pytest.raises(DimensionTooSmall):
            ChainKernel(n, m, kind)

    def test_beyond_closed_forms(self):
        with pytest.raises(UnsupportedRequest, match="upstream closed form unavailable"):
            eval_upstream(3, 5, HalfSpacePoint(1.0, (0.5,) * 5))
        with pytest.raises(UnsupportedRequest):
            ChainKernel(3, 5)


class TestChainKernel:
    def test_kinds(self):
        p = HalfSpacePoint(1.0, (0.2, 0.3, -0.1))
        k = ChainKernel(-2, 3)
        a, b = eval_kernel(-2, 3, p)
        assert ChainKernel(-2, 3, "A")(p) == a
        np.testing.assert_array_equal(ChainKernel(-2, 3, "B")(p), b)
        assert k(p) == k.as_multivector(p)

    def test_bad_kind(self):
        with pytest.raises(DomainError):
            ChainKernel(-1, 3, "Z")
