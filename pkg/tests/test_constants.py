import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from monogenic_chain.constants import (
    ONE,
    PI,
    ZERO,
    SymbolicConstant,
    gamma_half,
    gamma_ratio,
    gamma_ratio_limit,
    gamma_value,
    pochhammer,
    reciprocal_gamma,
    sphere_area,
)
from monogenic_chain.errors import DomainError, PiPowerMismatch, PoleError

constants = st.builds(
    SymbolicConstant,
    st.fractions(max_denominator=50).filter(lambda q: q != 0),
    st.integers(-6, 6),
)


def sympy_value(c: SymbolicConstant):
    return sympy.Rational(c.q.numerator, c.q.denominator) * sympy.pi ** sympy.Rational(c.p, 2)


class TestSymbolicConstant:
    def test_canonical_zero(self):
        assert SymbolicConstant(Fraction(0), 5) == ZERO
        assert SymbolicConstant(Fraction(0), 5).p == 0

    def test_text_forms(self):
        assert SymbolicConstant(Fraction(3, 4), 1).to_text() == "3/4*pi^(1/2)"
        assert SymbolicConstant(Fraction(-2), 0).to_text() == "-2"
        assert SymbolicConstant(Fraction(1, 3), 2).to_decimal(6) == f"{math.pi / 3:.6g}"

    def test_mismatched_powers_rejected(self):
        with pytest.raises(PiPowerMismatch):
            PI + ONE

    def test_zero_absorbs_power(self):
        assert ZERO + PI == PI
        assert PI - PI == ZERO

    @given(constants, constants)
    def test_product_matches_sympy(self, a, b):
        assert sympy.simplify(sympy_value(a * b) - sympy_value(a) * sympy_value(b)) == 0
        assert sympy.simplify(sympy_value(a / b) - sympy_value(a) / sympy_value(b)) == 0

    @given(constants, st.integers(-4, 4))
    def test_power(self, a, n):
        assert sympy.simplify(sympy_value(a**n) - sympy_value(a) ** n) == 0

    @given(constants)
    def test_float_conversion(self, a):
        assert float(a) == pytest.approx(float(sympy_value(a)), rel=1e-14)


class TestGamma:
    @pytest.mark.parametrize(
        "two_z, expected",
        [(1, SymbolicConstant(Fraction(1), 1)), (6, SymbolicConstant(Fraction(2))),
         (5, SymbolicConstant(Fraction(3, 4), 1))],
    )
    def test_examples(self, two_z, expected):
        assert gamma_half(two_z) == expected

    @pytest.mark.parametrize("two_z", [0, -1, -4])
    def test_pole(self, two_z):
        with pytest.raises(PoleError):
            gamma_half(two_z)

    @pytest.mark.parametrize("two_z", range(1, 26))
    def test_functional_equation(self, two_z):
        # Gamma(z + 1) = z Gamma(z) up to z = 25/2
        assert gamma_half(two_z + 2) == gamma_half(two_z) * Fraction(two_z, 2)

    @pytest.mark.parametrize("two_z", list(range(1, 30)) + [-1, -3, -5, -7])
    def test_against_math_gamma(self, two_z):
        assert float(gamma_value(two_z)) == pytest.approx(math.gamma(two_z / 2), rel=1e-13)

    def test_reciprocal_vanishes_at_poles(self):
        assert reciprocal_gamma(0) == ZERO
        assert reciprocal_gamma(-6) == ZERO
        assert reciprocal_gamma(3) * gamma_half(3) == ONE

    @pytest.mark.parametrize("neg_a, neg_b, expected", [(3, 1, Fraction(1, 6)), (0, 0, 1), (1, 2, -2)])
    def test_pole_ratio_examples(self, neg_a, neg_b, expected):
        assert gamma_ratio_limit(neg_a, neg_b) == expected

    @given(st.integers(0, 12), st.integers(0, 12))
    def test_pole_ratio_against_perturbation(self, a, b):
        with mpmath.workdps(60):
            eps = mpmath.mpf(10) ** -30
            approx = mpmath.gamma(-a + eps) / mpmath.gamma(-b + eps)
        assert float(approx) == pytest.approx(float(gamma_ratio_limit(a, b)), rel=1e-12)

    @given(st.integers(-15, 15), st.integers(-15, 15))
    def test_ratio_against_perturbation(self, two_a, two_b):
        with mpmath.workdps(60):
            eps = mpmath.mpf(10) ** -45
            approx = mpmath.gamma(mpmath.mpf(two_a) / 2 + eps) / mpmath.gamma(mpmath.mpf(two_b) / 2 + eps)
        try:
            value = gamma_ratio(two_a, two_b)
        except PoleError:
            assert abs(approx) > 1e20
            return
        assert float(approx) == pytest.approx(float(value), rel=1e-12, abs=1e-30)

    @given(st.integers(-15, 15), st.integers(-15, 15))
    def test_ratio_consistent(self, two_a, two_b):
        try:
            value = gamma_ratio(two_a, two_b)
        except PoleError:
            return
        if two_a > 0 and two_b > 0:
            assert value == gamma_half(two_a) / gamma_half(two_b)

    def test_pochhammer(self):
        assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
        assert pochhammer(-2, 3) == 0
        assert pochhammer(5, 0) == 1


class TestSphereArea:
    @pytest.mark.parametrize("n, expected", [(2, SymbolicConstant(Fraction(2), 2)),
                                             (3, SymbolicConstant(Fraction(4), 2)),
                                             (4, SymbolicConstant(Fraction(2), 4))])
    def test_examples(self, n, expected):
        assert sphere_area(n) == expected

    @pytest.mark.parametrize("n", range(1, 13))
    def test_definition(self, n):
        assert sphere_area(n) * gamma_half(n) == SymbolicConstant(Fraction(2), n)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_against_sympy(self, n):
        ref = 2 * sympy.pi ** sympy.Rational(n, 2) / sympy.gamma(sympy.Rational(n, 2))
        assert sympy.simplify(sympy_value(sphere_area(n)) - ref) == 0

    def test_domain(self):
        with pytest.raises(DomainError):
            sphere_area(0)
