"""Kernels of the harmonic / monogenic potential chain in upper half-space.

The chain index ``n`` is signed: ``n <= -1`` are the downstream kernels
obtained from the Cauchy kernel by differentiation, ``n = 0`` is the Green
function with its conjugate harmonic, and ``n = 1, 2`` are the first upstream
primitives.  For every ``n`` the pair ``(A_n, B_n)`` is conjugate harmonic
and ``C_n = A_n/2 + e0bar B_n/2`` is monogenic.

Downstream kernels are polynomial in ``(x0, |x_vec|^2)`` over a power of
``|x|``::

    A_{-k} = (2/sigma_{m+1}) P_k(x0, |x_vec|^2) / |x|^(m+2k-1)
    B_{-k} = (2/sigma_{m+1}) x_vec Q_{k-1}(x0, |x_vec|^2) / |x|^(m+2k-1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np

from .clifford import CliffordContext, HalfSpacePoint, Multivector
from .constants import SymbolicConstant, gamma_ratio, gamma_ratio_limit, sphere_area
from .errors import DimensionTooSmall, DomainError, SingularityError, UnsupportedRequest
from .special import (
    TerminatingHypergeometric,
    f_m,
    gegenbauer_imag,
    hyp2f1_real,
    hyp2f1_terminating,
)

__all__ = [
    "BivarPoly",
    "poly_P",
    "poly_Q",
    "poly_P_from_Q",
    "poly_Q_from_P",
    "p_gegenbauer",
    "q_gegenbauer",
    "p_hypergeometric",
    "q_hypergeometric",
    "eval_downstream",
    "eval_center",
    "eval_upstream",
    "eval_kernel",
    "eval_C",
    "eval_exact",
    "ChainKernel",
    "MIN_DIMENSION",
    "NEAR_AXIS",
]

#: below this ratio |x_vec|/x0 the upstream kernels switch to their series form
NEAR_AXIS = 0.5

#: smallest m for which each upstream kernel exists
MIN_DIMENSION: dict[tuple[int, str], int] = {
    (0, "A"): 2,
    (0, "B"): 2,
    (1, "A"): 3,
    (1, "B"): 2,
    (2, "A"): 4,
    (2, "B"): 3,
}


class BivarPoly:
    """Polynomial in ``t`` and ``s = u^2`` stored as ``{(a, b): coeff}`` for ``t^a s^b``.

    Coefficients may be ``Fraction`` or sympy expressions (symbolic ``m``).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        self.terms = {}
        for key, c in (terms or {}).items():
            c = _simplify(c)
            if c != 0:
                self.terms[key] = c

    @classmethod
    def constant(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BivarPoly(out)

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "BivarPoly":
        return BivarPoly({k: c * v for k, v in self.terms.items()})

    def shift(self, da: int = 0, db: int = 0) -> "BivarPoly":
        """Multiply by ``t^da s^db``."""
        return BivarPoly({(a + da, b + db): c for (a, b), c in self.terms.items()})

    def d_t(self) -> "BivarPoly":
        return BivarPoly({(a - 1, b): a * c for (a, b), c in self.terms.items() if a})

    def d_s(self) -> "BivarPoly":
        return BivarPoly({(a, b - 1): b * c for (a, b), c in self.terms.items() if b})

    def degree(self) -> int:
        """Total degree in ``(t, u)``, counting ``s`` as degree two."""
        return max((a + 2 * b for a, b in self.terms), default=0)

    def is_homogeneous(self, degree: int) -> bool:
        return all(a + 2 * b == degree for a, b in self.terms)

    def __call__(self, t, s):
        total = 0
        for (a, b), c in self.terms.items():
            total = total + c * t**a * s**b
        return total

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(_simplify(self.terms.get(k, 0) - other.terms.get(k, 0)) == 0 for k in keys)

    def __hash__(self):
        return hash(frozenset(self.terms))

    def coefficient(self, a: int, b: int):
        return self.terms.get((a, b), 0)

    def ordered(self) -> list[tuple[tuple[int, int], object]]:
        """Terms by decreasing power of ``t``."""
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][0], kv[0][1]))

    def __repr__(self):
        if not self.terms:
            return "BivarPoly(0)"
        parts = [f"({c})*t^{a}*s^{b}" for (a, b), c in self.ordered()]
        return "BivarPoly(" + " + ".join(parts) + ")"


def _simplify(c):
    if hasattr(c, "expand"):
        return c.expand()
    return c


def _step(poly: BivarPoly, factor) -> BivarPoly:
    """``(t^2 + s) d_t poly - factor * t * poly``."""
    dp = poly.d_t()
    return dp.shift(2, 0) + dp.shift(0, 1) - poly.shift(1, 0).scale(factor)


@lru_cache(maxsize=None)
def _poly_P_cached(k: int, m) -> BivarPoly:
    if k == 1:
        return BivarPoly({(1, 0): Fraction(1) if isinstance(m, (int, Fraction)) else 1})
    prev = _poly_P_cached(k - 1, m)
    return _step(prev, m + 2 * (k - 1) - 1)


@lru_cache(maxsize=None)
def _poly_Q_cached(k: int, m) -> BivarPoly:
    if k == 0:
        return BivarPoly.constant(Fraction(-1) if isinstance(m, (int, Fraction)) else -1)
    return _step(_poly_Q_cached(k - 1, m), m + 2 * k - 1)


def poly_P(k: int, m) -> BivarPoly:
    """Numerator polynomial ``P_k`` of the downstream scalar kernel ``A_{-k}``.

    ``P_1 = t`` and ``P_{k+1} = (t^2 + s) dP_k/dt - (m + 2k - 1) t P_k``.
    ``m`` may be an integer or a sympy symbol.
    """
    if k < 1:
        raise DomainError(f"poly_P needs k >= 1, got {k}")
    return _poly_P_cached(k, m)


def poly_Q(k: int, m) -> BivarPoly:
    """Numerator polynomial ``Q_k`` of the downstream vector kernel ``B_{-k-1}``.

    ``Q_0 = -1`` and ``Q_k = (t^2 + s) dQ_{k-1}/dt - (m + 2k - 1) t Q_{k-1}``.
    """
    if k < 0:
        raise DomainError(f"poly_Q needs k >= 0, got {k}")
    return _poly_Q_cached(k, m)


def poly_Q_from_P(k: int, m) -> BivarPoly:
    """``Q_k`` rebuilt from ``P_k`` through the Dirac derivative in ``x_vec``.

    Writing ``-dx A_{-k} = B_{-k-1}`` in the variables ``(t, s)`` gives
    ``Q_k = (m + 2k - 1) P_k - 2 (t^2 + s) dP_k/ds``.
    """
    p = poly_P(k, m)
    ds = p.d_s()
    return p.scale(m + 2 * k - 1) - (ds.shift(2, 0) + ds.shift(0, 1)).scale(2)


def poly_P_from_Q(k: int, m) -> BivarPoly:
    """``P_{k+1}`` rebuilt from ``Q_{k-1}`` through ``-dx B_{-k} = A_{-k-1}``.

    ``P_{k+1} = (m t^2 - (2k - 1) s) Q_{k-1} + 2 (t^2 + s) s dQ_{k-1}/ds``.
    """
    q = poly_Q(k - 1, m)
    ds = q.d_s()
    first = q.shift(2, 0).scale(m) - q.shift(0, 1).scale(2 * k - 1)
    second = (ds.shift(2, 1) + ds.shift(0, 2)).scale(2)
    return first + second


# closed forms ---------------------------------------------------------------

def _pole_ratio(neg_a: int, neg_b: int) -> Fraction:
    """``Gamma(-neg_a)/Gamma(-neg_b)`` at two poles, read as a limit."""
    return gamma_ratio_limit(neg_a, neg_b)


def _half_ratio(two_a: int, two_b: int) -> Fraction:
    """``Gamma(two_a/2)/Gamma(two_b/2)`` for arguments differing by an integer."""
    value = gamma_ratio(two_a, two_b)
    if value.p != 0:
        raise AssertionError("Gamma ratio with integer shift must be rational")
    return value.q


def _p_prefactor(k: int, m: int) -> Fraction:
    return (
        Fraction(1, m - 1)
        * _pole_ratio(m + 2 * k - 2, m + k - 2)
        * _half_ratio(3 - m, 3 - m - 2 * k)
    )


def _q_prefactor(k: int, m: int) -> Fraction:
    return _pole_ratio(m + 2 * k - 2, m + k - 1) * _half_ratio(1 - m, 3 - m - 2 * k)


def p_gegenbauer(k: int, m: int, t, u):
    """``P_k(t, u^2)`` through the Gegenbauer polynomial ``C_k^(1-k-m/2)`` at ``i t/u``.

    Exact for rational ``t`` and nonzero rational ``u``.
    """
    alpha = Fraction(2 - 2 * k - m, 2)
    pref = (-1) ** (k + 1) * 2**k * math.factorial(k) * _p_prefactor(k, m)
    return pref * u**k * gegenbauer_imag(k, alpha, Fraction(t) / Fraction(u) if _exact(t, u) else t / u)


def q_gegenbauer(k: int, m: int, t, u):
    """``Q_{k-1}(t, u^2)``, the numerator of ``B_{-k}``, through ``C_{k-1}^(1-k-m/2)``."""
    alpha = Fraction(2 - 2 * k - m, 2)
    pref = (-1) ** k * 2 ** (k - 1) * math.factorial(k - 1) * _q_prefactor(k, m)
    w = Fraction(t) / Fraction(u) if _exact(t, u) else t / u
    return pref * u ** (k - 1) * gegenbauer_imag(k - 1, alpha, w)


def p_hypergeometric(k: int, m: int, t, s):
    """``P_k(t, s)`` through ``t^k 2F1(-k/2, (1-k)/2; m/2; -s/t^2)``; needs ``t != 0``."""
    pref = -Fraction(4**k) * _p_prefactor(k, m) * _half_ratio(2 - m, 2 - m - 2 * k)
    h = TerminatingHypergeometric(Fraction(-k, 2), Fraction(1 - k, 2), Fraction(m, 2))
    z = -Fraction(s) / Fraction(t) ** 2 if _exact(t, s) else -s / t**2
    return pref * t**k * hyp2f1_terminating(h, z)


def q_hypergeometric(k: int, m: int, t, s):
    """``Q_{k-1}(t, s)`` through ``t^(k-1) 2F1(-(k-1)/2, 1-k/2; m/2+1; -s/t^2)``."""
    pref = -Fraction(4 ** (k - 1)) * _q_prefactor(k, m) * _half_ratio(-m, 2 - m - 2 * k)
    h = TerminatingHypergeometric(Fraction(1 - k, 2), Fraction(2 - k, 2), Fraction(m + 2, 2))
    z = -Fraction(s) / Fraction(t) ** 2 if _exact(t, s) else -s / t**2
    return pref * t ** (k - 1) * hyp2f1_terminating(h, z)


def _exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in xs)


# numeric evaluation ---------------------------------------------------------

@lru_cache(maxsize=None)
def _float_terms(kind: str, k: int, m: int) -> tuple[tuple[int, int, float], ...]:
    poly = poly_P(k, m) if kind == "P" else poly_Q(k, m)
    return tuple((a, b, float(c)) for (a, b), c in poly.terms.items())


def _eval_terms(terms, t: float, s: float) -> float:
    return sum(c * t**a * s**b for a, b, c in terms)


@lru_cache(maxsize=None)
def _sigma(n: int) -> float:
    return float(sphere_area(n))


def _coords(p: HalfSpacePoint, m: int):
    if p.m != m:
        raise DomainError(f"point has {p.m} boundary coordinates, expected m={m}")
    x0 = float(p.x0)
    xv = np.array([float(v) for v in p.x_vec], dtype=float)
    r2 = float(xv @ xv)
    return x0, xv, r2


def eval_downstream(n: int, m: int, p: HalfSpacePoint) -> tuple[float, np.ndarray]:
    """Evaluate ``(A_n, B_n)`` for ``n <= -1``.

    Returns
    -------
    A : float
    B : ndarray of shape (m,)
        Coefficients of ``e_1 ... e_m``.
    """
    if n > -1:
        raise DomainError(f"eval_downstream needs n <= -1, got {n}")
    if m < 2:
        raise DimensionTooSmall(f"downstream kernels need m >= 2, got {m}")
    k = -n
    x0, xv, r2 = _coords(p, m)
    norm2 = x0 * x0 + r2
    if norm2 == 0:
        raise SingularityError("kernel evaluated at the origin")
    scale = 2.0 / _sigma(m + 1) / norm2 ** ((m + 2 * k - 1) / 2)
    a = scale * _eval_terms(_float_terms("P", k, m), x0, r2)
    b = scale * _eval_terms(_float_terms("Q", k - 1, m), x0, r2) * xv
    return a, b


def _radial_f(order: int, x0: float, r: float) -> float:
    """``F_order(r/x0) / r^order``, switching to the series near the axis."""
    v = r / x0
    if v < NEAR_AXIS:
        return x0 ** (-order) / order * hyp2f1_real(
            order / 2, (order + 1) / 2, order / 2 + 1, -v * v
        )
    return f_m(order, v) / r**order


def eval_center(m: int, p: HalfSpacePoint) -> tuple[float, np.ndarray]:
    """Green function ``A_0`` and its conjugate harmonic ``B_0``.

    ``A_0 = -(2/(m-1)) / sigma_{m+1} / |x|^(m-1)`` and
    ``B_0 = (2/sigma_{m+1}) x_vec F_m(|x_vec|/x0) / |x_vec|^m``.
    """
    if m < 2:
        raise DimensionTooSmall(f"A_0 needs m >= 2, got {m}")
    x0, xv, r2 = _coords(p, m)
    sig = _sigma(m + 1)
    norm2 = x0 * x0 + r2
    a = -2.0 / (m - 1) / sig / norm2 ** ((m - 1) / 2)
    b = 2.0 / sig * _radial_f(m, x0, math.sqrt(r2)) * xv
    return a, b


def _upstream_a(n: int, m: int, x0: float, r2: float) -> float:
    sig = _sigma(m + 1)
    r = math.sqrt(r2)
    norm2 = x0 * x0 + r2
    if n == 1:
        return 2.0 / ((m - 1) * sig) * _radial_f(m - 2, x0, r)
    return (
        2.0 / ((m - 1) * sig) * x0 * _radial_f(m - 2, x0, r)
        - 2.0 / ((m - 1) * (m - 3) * sig) / norm2 ** ((m - 3) / 2)
    )


def _upstream_b(n: int, m: int, x0: float, r2: float) -> float:
    """Scalar factor ``beta`` with ``B_n = beta * x_vec``."""
    sig = _sigma(m + 1)
    r = math.sqrt(r2)
    norm2 = x0 * x0 + r2
    if n == 1:
        return 2.0 / sig * x0 * _radial_f(m, x0, r) - 2.0 / ((m - 1) * sig) / norm2 ** ((m - 1) / 2)
    return (
        norm2 / sig * _radial_f(m, x0, r)
        - (m - 3) / ((m - 1) * sig) * _radial_f(m - 2, x0, r)
    )


def _require(n: int, kind: str, m: int):
    floor = MIN_DIMENSION.get((n, kind))
    if floor is None:
        raise UnsupportedRequest("upstream closed form unavailable for n >= 3")
    if m < floor:
        raise DimensionTooSmall(f"{kind}_{n} needs m >= {floor}, got m={m}")


def eval_upstream(n: int, m: int, p: HalfSpacePoint) -> tuple[float, np.ndarray]:
    """Closed-form upstream pair ``(A_n, B_n)`` for ``n`` in ``{1, 2}``.

    Raises
    ------
    DimensionTooSmall
        If ``m`` is below the floor of either kernel (``A_1``: m > 2,
        ``A_2``: m > 3, ``B_2``: m > 2).
    UnsupportedRequest
        For ``n >= 3``.
    """
    if n >= 3:
        raise UnsupportedRequest("upstream closed form unavailable for n >= 3")
    if n not in (1, 2):
        raise DomainError(f"eval_upstream needs n in {{1, 2}}, got {n}")
    _require(n, "A", m)
    _require(n, "B", m)
    x0, xv, r2 = _coords(p, m)
    return _upstream_a(n, m, x0, r2), _upstream_b(n, m, x0, r2) * xv


def eval_kernel(n: int, m: int, p: HalfSpacePoint, kind: str = "AB"):
    """Dispatch on the chain index; ``kind`` selects ``"A"``, ``"B"`` or ``"AB"``."""
    if n <= -1:
        a, b = eval_downstream(n, m, p)
    elif n == 0:
        a, b = eval_center(m, p)
    elif n >= 3:
        raise UnsupportedRequest("upstream closed form unavailable for n >= 3")
    else:
        for kk in ("A", "B"):
            if kk in kind:
                _require(n, kk, m)
        x0, xv, r2 = _coords(p, m)
        a = _upstream_a(n, m, x0, r2) if "A" in kind else None
        b = _upstream_b(n, m, x0, r2) * xv if "B" in kind else None
    if kind == "A":
        return a
    if kind == "B":
        return b
    return a, b


def eval_C(n: int, m: int, p: HalfSpacePoint) -> Multivector:
    """Monogenic kernel ``C_n = A_n/2 + e0bar B_n/2`` as a multivector.

    Since ``e0bar e_j = -e_0 e_j`` the bivector ``e_0 e_j`` carries ``-B_j/2``.
    """
    a, b = eval_kernel(n, m, p)
    coeffs = {0: 0.5 * a}
    for j, bj in enumerate(b, start=1):
        coeffs[1 | (1 << j)] = -0.5 * float(bj)
    return Multivector(CliffordContext(m), coeffs)


def _exact_root(q: Fraction) -> Fraction | None:
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def eval_exact(n: int, m: int, p: HalfSpacePoint) -> tuple[SymbolicConstant, list[SymbolicConstant]]:
    """Exact values for downstream kernels and the Green function.

    Available when the point has rational coordinates and ``|x|`` is
    rational.  ``B_0`` is only exact on the axis, where it vanishes.
    """
    if not p.is_exact():
        raise UnsupportedRequest("exact evaluation needs rational coordinates")
    x0 = Fraction(p.x0)
    xv = [Fraction(v) for v in p.x_vec]
    r2 = sum((v * v for v in xv), Fraction(0))
    norm = _exact_root(x0 * x0 + r2)
    if norm is None:
        raise UnsupportedRequest("exact evaluation needs a rational |x|")
    sig = sphere_area(m + 1)
    if n <= -1:
        k = -n
        scale = SymbolicConstant(Fraction(2)) / sig / norm ** (m + 2 * k - 1)
        a = scale * poly_P(k, m)(x0, r2)
        qv = poly_Q(k - 1, m)(x0, r2)
        return a, [scale * (qv * v) for v in xv]
    if n == 0:
        if any(xv):
            raise UnsupportedRequest("B_0 has no exact form off the axis")
        a = SymbolicConstant(Fraction(-2, m - 1)) / sig / norm ** (m - 1)
        return a, [SymbolicConstant(0)] * m
    raise UnsupportedRequest(f"no exact evaluation for n = {n}")


@dataclass(frozen=True)
class ChainKernel:
    """One member ``A_n``, ``B_n`` or ``C_n`` of the chain in dimension ``m``."""

    n: int
    m: int
    kind: str = "C"

    def __post_init__(self):
        if self.kind not in ("A", "B", "C"):
            raise DomainError(f"kind must be A, B or C, got {self.kind!r}")
        if self.n >= 3:
            raise UnsupportedRequest("upstream closed form unavailable for n >= 3")
        if self.m < 2:
            raise DimensionTooSmall(f"chain kernels need m >= 2, got {self.m}")
        if self.n >= 0:
            for kk in ("A", "B") if self.kind == "C" else (self.kind,):
                _require(self.n, kk, self.m)

    @property
    def context(self) -> CliffordContext:
        return CliffordContext(self.m)

    def __call__(self, p: HalfSpacePoint):
        if self.kind == "C":
            return eval_C(self.n, self.m, p)
        return eval_kernel(self.n, self.m, p, self.kind)

    def as_multivector(self, p: HalfSpacePoint) -> Multivector:
        """Value as a multivector: scalar for A, vector for B, paravector form for C."""
        ctx = self.context
        if self.kind == "C":
            return eval_C(self.n, self.m, p)
        if self.kind == "A":
            return ctx.scalar(float(eval_kernel(self.n, self.m, p, "A")))
        b = eval_kernel(self.n, self.m, p, "B")
        return ctx.boundary_vector([float(v) for v in b])
