import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from monogenic_chain.constants import SymbolicConstant
from monogenic_chain.errors import DomainError, UnsupportedRequest
from monogenic_chain.special import (
    INFINITY,
    TerminatingHypergeometric,
    f_m,
    f_m_infinity,
    f_tilde,
    gegenbauer_imag,
    hyp2f1_real,
    hyp2f1_terminating,
)


def f_m_quad(m: int, v: float) -> float:
    value, _ = quad(lambda eta: eta ** (m - 1) / (1 + eta * eta) ** ((m + 1) / 2), 0, v,
                    epsabs=1e-14, epsrel=1e-13, limit=200)
    return value


def f_tilde_quad(m: int, u: float) -> float:
    value, _ = quad(lambda z: (1 + z * z) ** (-(m - 1) / 2), 0, u, epsabs=1e-14, epsrel=1e-13, limit=200)
    return value


class TestFm:
    def test_examples(self):
        assert f_m(1, 1.0) == pytest.approx(math.pi / 4, abs=1e-15)
        assert f_m(2, math.sqrt(3)) == pytest.approx(0.5, abs=1e-15)
        assert f_m(2, INFINITY) == 1.0

    @pytest.mark.parametrize("m", range(1, 11))
    @pytest.mark.parametrize("v", [0.1, 1.0, 10.0, 0.0, 1e-3, 250.0])
    def test_against_quadrature(self, m, v):
        assert abs(f_m(m, v) - f_m_quad(m, v)) < 1e-10

    @pytest.mark.parametrize("m", range(1, 13))
    def test_value_at_infinity(self, m):
        expected = math.sqrt(math.pi) / 2 * math.gamma(m / 2) / math.gamma((m + 1) / 2)
        assert float(f_m_infinity(m)) == pytest.approx(expected, rel=1e-14)
        assert f_m(m, INFINITY) == pytest.approx(expected, rel=1e-14)

    def test_symbolic_infinity(self):
        assert f_m_infinity(2) == SymbolicConstant(Fraction(1))
        assert f_m_infinity(5) == SymbolicConstant(Fraction(3, 16), 2)

    @given(st.integers(1, 10), st.lists(st.floats(0, 50), min_size=2, max_size=6))
    def test_monotone_and_bounded(self, m, vs):
        values = [f_m(m, v) for v in sorted(vs)]
        assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))
        assert values[-1] <= float(f_m_infinity(m)) + 1e-15

    def test_negative_argument(self):
        with pytest.raises(DomainError):
            f_m(3, -0.1)


class TestFTilde:
    def test_examples(self):
        assert f_tilde(3, 1.0) == pytest.approx(math.pi / 4, abs=1e-15)
        assert f_tilde(5, 0.0) == 0.0
        assert f_tilde(4, INFINITY) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("m", range(3, 11))
    @pytest.mark.parametrize("u", [0.05, 0.5, 1.0, 3.0, 40.0])
    def test_against_quadrature(self, m, u):
        assert abs(f_tilde(m, u) - f_tilde_quad(m, u)) < 1e-11

    def test_dimension_floor(self):
        with pytest.raises(DomainError):
            f_tilde(2, 1.0)


class TestHypergeometric:
    def test_examples(self):
        z = Fraction(2, 7)
        assert hyp2f1_terminating(TerminatingHypergeometric(0, Fraction(3, 2), 2), z) == 1
        assert hyp2f1_terminating(TerminatingHypergeometric(-1, 1, 2), z) == 1 - z / 2
        for m in range(2, 8):
            h = TerminatingHypergeometric(-1, Fraction(-1, 2), Fraction(m, 2))
            assert hyp2f1_terminating(h, z) == 1 + z / m

    @given(st.integers(0, 8), st.fractions(-4, 4, max_denominator=6),
           st.fractions(Fraction(1, 2), 6, max_denominator=4), st.fractions(-3, 3, max_denominator=9))
    def test_against_mpmath(self, n, b, c, z):
        h = TerminatingHypergeometric(-n, b, c)
        exact = hyp2f1_terminating(h, z)
        assert isinstance(exact, Fraction)
        with mpmath.workdps(40):
            ref = mpmath.hyp2f1(-n, mpmath.mpf(b.numerator) / b.denominator,
                                mpmath.mpf(c.numerator) / c.denominator,
                                mpmath.mpf(z.numerator) / z.denominator)
        assert float(exact) == pytest.approx(float(ref), rel=1e-12, abs=1e-12)

    def test_length_and_coefficients(self):
        h = TerminatingHypergeometric(-3, Fraction(1, 2), 1)
        assert h.length == 4
        assert len(h.coefficients()) == 4

    def test_non_terminating(self):
        with pytest.raises(UnsupportedRequest):
            TerminatingHypergeometric(Fraction(1, 2), Fraction(1, 3), 2)

    @pytest.mark.parametrize("z", [-0.9, -0.3, 0.2, 0.7])
    def test_real_series(self, z):
        assert hyp2f1_real(1.5, 2.0, 2.5, z) == pytest.approx(float(mpmath.hyp2f1(1.5, 2.0, 2.5, z)), rel=1e-13)


class TestGegenbauer:
    def test_examples(self):
        assert gegenbauer_imag(0, Fraction(3), Fraction(5)) == 1
        assert gegenbauer_imag(1, Fraction(3, 2), Fraction(2)) == -6

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 7), st.fractions(-6, 6, max_denominator=4), st.fractions(-2, 2, max_denominator=5))
    def test_against_generating_function(self, k, alpha, w):
        # coefficient of r^k in (1 - 2 x r + r^2)^(-alpha) at x = i w, times i^k
        r = sympy.Symbol("r")
        a = sympy.Rational(alpha.numerator, alpha.denominator)
        x = sympy.I * sympy.Rational(w.numerator, w.denominator)
        series = sympy.series((1 - 2 * x * r + r**2) ** (-a), r, 0, k + 1).removeO()
        ref = sympy.expand(sympy.I**k * series.coeff(r, k))
        assert sympy.im(ref) == 0
        value = gegenbauer_imag(k, alpha, w)
        assert sympy.Rational(value.numerator, value.denominator) == sympy.re(ref)

    @given(st.integers(0, 8), st.fractions(-5, 5, max_denominator=3), st.fractions(-3, 3, max_denominator=5))
    def test_exact_for_rational_input(self, k, alpha, w):
        assert isinstance(gegenbauer_imag(k, alpha, w), (int, Fraction))

    def test_b_minus_two_closed_form(self):
        # k = 2, alpha = -2 - m/2 at m = 3, w = 1: the closed form of B_{-2} against
        # its hypergeometric form and the recurrence numerator Q_1
        from monogenic_chain.kernels import poly_Q, q_gegenbauer, q_hypergeometric

        t = Fraction(1)
        assert q_gegenbauer(2, 3, t, t) == q_hypergeometric(2, 3, t, t * t) == poly_Q(1, 3)(t, t * t)
