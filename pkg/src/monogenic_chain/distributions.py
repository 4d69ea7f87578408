"""Exact calculus on the normalized distributions ``T*_lambda`` and ``U*_lambda``.

Distributions on R^m are finite sums over the two families with exact
coefficients.  ``T*`` terms are scalar valued and ``U*`` terms Clifford-vector
valued.  The delta distribution and its Dirac derivatives are members of the
families (``T*_{-m-2l}`` and ``U*_{-m-2l-1}``), so no third family is needed.

Rules implemented here, for integer ``lam`` and fixed ``m``::

    x T*_lam  = (lam+m)/(2 pi) U*_{lam+1}      x U*_lam  = -T*_{lam+1}
    dx T*_lam = lam U*_{lam-1}                 dx U*_lam = -2 pi T*_{lam-1}
    r^2 T*_lam = (lam+m)/(2 pi) T*_{lam+2}     r^2 U*_lam = (lam+m+1)/(2 pi) U*_{lam+2}

plus the three convolution formulas for T*T, U*T and U*U.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .constants import ONE, PI, SymbolicConstant, gamma_half, gamma_value, reciprocal_gamma, sphere_area
from .errors import ConvolutionUndefined, DimensionMismatch, DimensionTooSmall, DomainError

__all__ = [
    "BoundaryDistribution",
    "ParavectorDistribution",
    "T_star",
    "U_star",
    "delta",
    "hilbert_kernel",
    "is_delta_type",
    "dirac_action",
    "multiply_x",
    "multiply_r2",
    "convolve",
    "hilbert",
    "boundary_value",
    "boundary_c",
    "evaluate_function",
    "sigma_text",
    "boundary_text",
]

Term = tuple[str, int]


def _const(c) -> SymbolicConstant:
    return SymbolicConstant.coerce(c)


class BoundaryDistribution:
    """Finite combination ``sum c * T*[lam] + sum c * U*[lam]`` on R^m."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[Term, SymbolicConstant] | None = None):
        self.m = m
        clean: dict[Term, SymbolicConstant] = {}
        for (fam, lam), c in (terms or {}).items():
            if fam not in ("T", "U"):
                raise DomainError(f"unknown family {fam!r}")
            c = _const(c)
            if not c.is_zero():
                clean[(fam, int(lam))] = c
        self.terms = clean

    @classmethod
    def zero(cls, m: int) -> "BoundaryDistribution":
        return cls(m)

    def _check(self, other: "BoundaryDistribution"):
        if other.m != self.m:
            raise DimensionMismatch(f"dimension mismatch: m={self.m} vs m={other.m}")

    def __add__(self, other: "BoundaryDistribution") -> "BoundaryDistribution":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out[key] + c if key in out else c
        return BoundaryDistribution(self.m, out)

    def __neg__(self) -> "BoundaryDistribution":
        return BoundaryDistribution(self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BoundaryDistribution") -> "BoundaryDistribution":
        return self + (-other)

    def __mul__(self, scalar) -> "BoundaryDistribution":
        s = _const(scalar)
        return BoundaryDistribution(self.m, {k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BoundaryDistribution):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def scalar_part(self) -> "BoundaryDistribution":
        return BoundaryDistribution(self.m, {k: c for k, c in self.terms.items() if k[0] == "T"})

    def vector_part(self) -> "BoundaryDistribution":
        return BoundaryDistribution(self.m, {k: c for k, c in self.terms.items() if k[0] == "U"})

    def involution(self) -> "BoundaryDistribution":
        """Main involution: vector-valued terms change sign."""
        return BoundaryDistribution(
            self.m, {k: (-c if k[0] == "U" else c) for k, c in self.terms.items()}
        )

    def ordered(self) -> list[tuple[Term, SymbolicConstant]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], -kv[0][1]))

    def to_text(self) -> str:
        """Canonical form ``coeff * T*[lam] + coeff * U*[lam]``."""
        if not self.terms:
            return "0"
        return " + ".join(f"{c.to_text()} * {fam}*[{lam}]" for (fam, lam), c in self.ordered())

    def __repr__(self):
        return f"BoundaryDistribution(m={self.m}: {self.to_text()})"


def T_star(m: int, lam: int, coeff=1) -> BoundaryDistribution:
    return BoundaryDistribution(m, {("T", lam): _const(coeff)})


def U_star(m: int, lam: int, coeff=1) -> BoundaryDistribution:
    return BoundaryDistribution(m, {("U", lam): _const(coeff)})


def delta(m: int) -> BoundaryDistribution:
    """``delta = (2/sigma_m) T*_{-m}``."""
    return T_star(m, -m, SymbolicConstant(Fraction(2)) / sphere_area(m))


def hilbert_kernel(m: int) -> BoundaryDistribution:
    """Hilbert kernel ``H = -(2/sigma_{m+1}) U*_{-m}``."""
    return U_star(m, -m, SymbolicConstant(Fraction(-2)) / sphere_area(m + 1))


def is_delta_type(family: str, lam: int, m: int) -> bool:
    """True for ``T*_{-m-2l}`` and ``U*_{-m-2l-1}``, the delta derivatives."""
    if family == "T":
        return lam <= -m and (lam + m) % 2 == 0
    return lam <= -m - 1 and (lam + m + 1) % 2 == 0


def _delta_form(family: str, lam: int, m: int) -> tuple[SymbolicConstant, int]:
    """Constant ``c`` and order ``n`` with ``term = c * dx^n delta``."""
    if family == "T":
        l = (-m - lam) // 2
        c = SymbolicConstant(Fraction(1, 4**l), m - 2 * l) / gamma_half(m + 2 * l)
        return c, 2 * l
    l = (-m - 1 - lam) // 2
    c = SymbolicConstant(Fraction(-1, 2 ** (2 * l + 1)), m - 2 * l) / gamma_half(m + 2 * l + 2)
    return c, 2 * l + 1


# term-wise operators --------------------------------------------------------

def _map_terms(d: BoundaryDistribution, rule) -> BoundaryDistribution:
    out = BoundaryDistribution(d.m)
    for (fam, lam), c in d.terms.items():
        new_fam, new_lam, factor = rule(fam, lam)
        out = out + BoundaryDistribution(d.m, {(new_fam, new_lam): c * factor})
    return out


def dirac_action(d: BoundaryDistribution, times: int = 1) -> BoundaryDistribution:
    """Apply the Dirac operator ``dx`` (``times`` times)."""
    m = d.m

    def rule(fam, lam):
        if fam == "T":
            return "U", lam - 1, _const(lam)
        return "T", lam - 1, PI * (-2)

    for _ in range(times):
        d = _map_terms(d, rule)
    return d


def multiply_x(d: BoundaryDistribution) -> BoundaryDistribution:
    """Multiply by the vector variable ``x``."""
    m = d.m

    def rule(fam, lam):
        if fam == "T":
            return "U", lam + 1, _const(Fraction(lam + m, 2)) / PI
        return "T", lam + 1, _const(-1)

    return _map_terms(d, rule)


def multiply_r2(d: BoundaryDistribution) -> BoundaryDistribution:
    """Multiply by ``r^2 = |x|^2``."""
    m = d.m

    def rule(fam, lam):
        shift = m if fam == "T" else m + 1
        return fam, lam + 2, _const(Fraction(lam + shift, 2)) / PI

    return _map_terms(d, rule)


# convolution ----------------------------------------------------------------

def _nonneg_even(x: int) -> bool:
    return x >= 0 and x % 2 == 0


def _nonneg_odd(x: int) -> bool:
    return x >= 1 and x % 2 == 1


def _convolve_regular(f1: str, l1: int, f2: str, l2: int, m: int) -> tuple[str, int, SymbolicConstant]:
    lam = l1 + l2 + m
    pi_half_m = SymbolicConstant(Fraction(1), m)
    if f1 == "T" and f2 == "T":
        if _nonneg_even(l1) or _nonneg_even(l2):
            raise ConvolutionUndefined(f"T*[{l1}] * T*[{l2}]: an index is a nonnegative even integer")
        if _nonneg_even(lam):
            raise ConvolutionUndefined(
                f"T*[{l1}] * T*[{l2}]: alpha + beta + m = {lam} is a nonnegative even integer"
            )
        c = pi_half_m * gamma_value(-lam) / (gamma_value(-l1) * gamma_value(-l2))
        return "T", lam, c
    if f1 == "U" and f2 == "U":
        if _nonneg_odd(l1) or _nonneg_odd(l2):
            raise ConvolutionUndefined(f"U*[{l1}] * U*[{l2}]: an index is a nonnegative odd integer")
        if _nonneg_even(l1 + l2 + m):
            raise ConvolutionUndefined(
                f"U*[{l1}] * U*[{l2}]: alpha + beta = -m + {lam} with {lam} a nonnegative even integer"
            )
        c = pi_half_m * PI * gamma_value(-lam) / (gamma_value(1 - l1) * gamma_value(1 - l2))
        return "T", lam, c
    # mixed: alpha belongs to U*, beta to T*
    a, b = (l1, l2) if f1 == "U" else (l2, l1)
    if _nonneg_odd(a):
        raise ConvolutionUndefined(f"U*[{a}] * T*[{b}]: the U index is a nonnegative odd integer")
    if _nonneg_even(b):
        raise ConvolutionUndefined(f"U*[{a}] * T*[{b}]: the T index is a nonnegative even integer")
    if _nonneg_odd(lam):
        raise ConvolutionUndefined(
            f"U*[{a}] * T*[{b}]: alpha + beta = -m + {lam} with {lam} a nonnegative odd integer"
        )
    c = pi_half_m * gamma_value(1 - lam) / (gamma_value(1 - a) * gamma_value(-b))
    return "U", lam, c


def _convolve_terms(t1: Term, t2: Term, m: int) -> BoundaryDistribution:
    f1, l1 = t1
    f2, l2 = t2
    # a delta derivative acts as a differential operator on the other factor
    if is_delta_type(f2, l2, m):
        c, order = _delta_form(f2, l2, m)
        return dirac_action(BoundaryDistribution(m, {t1: ONE}), order) * c
    if is_delta_type(f1, l1, m):
        c, order = _delta_form(f1, l1, m)
        return dirac_action(BoundaryDistribution(m, {t2: ONE}), order) * c
    fam, lam, c = _convolve_regular(f1, l1, f2, l2, m)
    return BoundaryDistribution(m, {(fam, lam): c})


def convolve(d1: BoundaryDistribution, d2: BoundaryDistribution) -> BoundaryDistribution:
    """Exact convolution ``d1 * d2`` extended bilinearly over the terms.

    Raises
    ------
    ConvolutionUndefined
        If some pair of terms hits an excluded parameter set and neither
        factor is a delta derivative.
    """
    d1._check(d2)
    out = BoundaryDistribution(d1.m)
    for t1, c1 in d1.terms.items():
        for t2, c2 in d2.terms.items():
            out = out + _convolve_terms(t1, t2, d1.m) * (c1 * c2)
    return out


def hilbert(d: BoundaryDistribution) -> BoundaryDistribution:
    """Hilbert transform ``H * d``."""
    return convolve(hilbert_kernel(d.m), d)


# paravector combinations ------------------------------------------------------

@dataclass(frozen=True)
class ParavectorDistribution:
    """``X + e0bar Y`` with boundary distributions ``X`` and ``Y``.

    ``e0bar`` anticommutes with vector-valued terms and commutes with scalar
    ones, which is all that is needed to multiply and convolve such pairs.
    """

    x: BoundaryDistribution
    y: BoundaryDistribution

    @classmethod
    def scalar(cls, d: BoundaryDistribution) -> "ParavectorDistribution":
        return cls(d, BoundaryDistribution(d.m))

    @classmethod
    def e0bar_times(cls, d: BoundaryDistribution) -> "ParavectorDistribution":
        return cls(BoundaryDistribution(d.m), d)

    @property
    def m(self) -> int:
        return self.x.m

    def __add__(self, other: "ParavectorDistribution") -> "ParavectorDistribution":
        return ParavectorDistribution(self.x + other.x, self.y + other.y)

    def __neg__(self):
        return ParavectorDistribution(-self.x, -self.y)

    def __mul__(self, scalar) -> "ParavectorDistribution":
        return ParavectorDistribution(self.x * scalar, self.y * scalar)

    __rmul__ = __mul__

    def times_e0bar(self) -> "ParavectorDistribution":
        """Left multiplication by ``e0bar``: ``e0bar (X + e0bar Y) = -Y + e0bar X``."""
        return ParavectorDistribution(-self.y, self.x)

    def dirac(self) -> "ParavectorDistribution":
        """``dx (X + e0bar Y) = dx X - e0bar dx Y``."""
        return ParavectorDistribution(dirac_action(self.x), -dirac_action(self.y))

    def hilbert(self) -> "ParavectorDistribution":
        """``H * (X + e0bar Y) = H X - e0bar H Y``."""
        return ParavectorDistribution(hilbert(self.x), -hilbert(self.y))

    def convolve(self, other: "ParavectorDistribution") -> "ParavectorDistribution":
        x = convolve(self.x, other.x) - convolve(self.y.involution(), other.y)
        y = convolve(self.x.involution(), other.y) + convolve(self.y, other.x)
        return ParavectorDistribution(x, y)

    def to_text(self) -> str:
        return f"{self.x.to_text()} | e0bar: {self.y.to_text()}"

    def __repr__(self):
        return f"ParavectorDistribution(m={self.m}: {self.to_text()})"


def _as_paravector(d) -> ParavectorDistribution:
    if isinstance(d, ParavectorDistribution):
        return d
    return ParavectorDistribution.scalar(d)


# boundary values ----------------------------------------------------------------

def _pi_power(p: int) -> SymbolicConstant:
    """``pi^(p/2)``."""
    return SymbolicConstant(Fraction(1), p)


def _positive_product(factors: Iterable[int], what: str, m: int) -> int:
    out = 1
    for f in factors:
        if f <= 0:
            raise DimensionTooSmall(f"{what} needs a larger dimension than m={m}")
        out *= f
    return out


def boundary_value(n: int, m: int) -> tuple[BoundaryDistribution, BoundaryDistribution]:
    """Boundary distributions ``(a_n, b_n)`` of the chain kernels ``(A_n, B_n)``.

    Downstream values (``n <= -1``) exist for every ``m >= 2``; upstream
    values need the dimension-dependent denominators to be positive.
    """
    if m < 2:
        raise DimensionTooSmall(f"boundary values need m >= 2, got {m}")
    sig_m = sphere_area(m)
    sig_m1 = sphere_area(m + 1)
    if n <= -1 and n % 2 == 1:
        l = (-n - 1) // 2
        ca = SymbolicConstant(Fraction(4**l)) * gamma_half(m + 2 * l) * _pi_power(2 * l - m)
        cb = SymbolicConstant(Fraction(-(4**l))) * gamma_half(m + 2 * l + 1) * _pi_power(2 * l - m - 1)
        return T_star(m, -m - 2 * l, ca), U_star(m, -m - 2 * l, cb)
    if n <= -1:
        l = -n // 2
        ca = SymbolicConstant(Fraction(-(2 ** (2 * l - 1)))) * gamma_half(m + 2 * l - 1) * _pi_power(2 * l - m - 1)
        cb = SymbolicConstant(Fraction(2 ** (2 * l - 1))) * gamma_half(m + 2 * l) * _pi_power(2 * l - m - 2)
        return T_star(m, -m - 2 * l + 1, ca), U_star(m, -m - 2 * l + 1, cb)
    if n % 2 == 0:
        j = n // 2
        den_a = _positive_product((m - 1 - 2 * i for i in range(j + 1)), f"a_{n}", m)
        den_b = _positive_product((m - 2 - 2 * i for i in range(j)), f"b_{n}", m)
        ca = SymbolicConstant(Fraction(-2, 2**j * den_a), -2 * j) / sig_m1
        cb = SymbolicConstant(Fraction(1, 2**j * den_b), -2 * (j + 1)) / sig_m
        return T_star(m, -m + 2 * j + 1, ca), U_star(m, -m + 2 * j + 1, cb)
    j = (n + 1) // 2
    den_a = _positive_product((m - 2 - 2 * i for i in range(j)), f"a_{n}", m)
    den_b = _positive_product((m - 1 - 2 * i for i in range(j)), f"b_{n}", m)
    ca = SymbolicConstant(Fraction(2, 2**j * den_a), -2 * j) / sig_m
    cb = SymbolicConstant(Fraction(-2, 2**j * den_b), -2 * j) / sig_m1
    return T_star(m, -m + 2 * j, ca), U_star(m, -m + 2 * j, cb)


def boundary_c(n: int, m: int) -> ParavectorDistribution:
    """``c_n = a_n/2 + e0bar b_n/2``."""
    a, b = boundary_value(n, m)
    half = Fraction(1, 2)
    return ParavectorDistribution(a * half, b * half)


# numeric representatives ----------------------------------------------------------

def evaluate_function(d: BoundaryDistribution, x_vec) -> tuple[float, np.ndarray]:
    """Value of the regular-function representative away from the origin.

    ``T*_lam = pi^((lam+m)/2) / Gamma((lam+m)/2) r^lam`` and
    ``U*_lam = pi^((lam+m+1)/2) / Gamma((lam+m+1)/2) x r^(lam-1)``.
    Delta derivatives are supported at the origin only and contribute zero.
    """
    xv = np.asarray(x_vec, dtype=float)
    if xv.shape != (d.m,):
        raise DomainError(f"expected a point of R^{d.m}")
    r = float(np.linalg.norm(xv))
    if r == 0:
        raise DomainError("representatives are evaluated away from the origin")
    scalar = 0.0
    vector = np.zeros(d.m)
    for (fam, lam), c in d.terms.items():
        if fam == "T":
            norm = _pi_power(lam + d.m) * reciprocal_gamma(lam + d.m)
            scalar += float(c * norm) * r**lam
        else:
            norm = _pi_power(lam + d.m + 1) * reciprocal_gamma(lam + d.m + 1)
            vector += float(c * norm) * r ** (lam - 1) * xv
    return scalar, vector


# rendering ------------------------------------------------------------------------

def _pi_text(p: int) -> str:
    p = abs(p)
    if p % 2:
        return f"pi^({p}/2)"
    return "pi" if p == 2 else f"pi^{p // 2}"


def sigma_text(c: SymbolicConstant, k: int) -> str:
    """Render ``c`` as a multiple of ``1/sigma_k``, e.g. ``-4*pi/sigma_5``."""
    rest = c * sphere_area(k)
    num, den = rest.q.numerator, rest.q.denominator
    top = [str(num)] if not (rest.p > 0 and abs(num) == 1) else (["-"] if num < 0 else [])
    bottom = [] if den == 1 else [str(den)]
    if rest.p > 0:
        top.append(_pi_text(rest.p))
    elif rest.p < 0:
        bottom.append(_pi_text(rest.p))
    bottom.append(f"sigma_{k}")
    head = "*".join(t for t in top if t != "-")
    if top and top[0] == "-":
        head = "-" + head
    tail = bottom[0] if len(bottom) == 1 else "(" + "*".join(bottom) + ")"
    return f"{head}/{tail}"


def boundary_text(n: int, m: int) -> str:
    """``a: ... ; b: ...`` with each coefficient written against a sphere area."""
    a, b = boundary_value(n, m)
    ka, kb = (m + 1, m) if n % 2 == 0 else (m, m + 1)

    def one(d: BoundaryDistribution, k: int) -> str:
        return " + ".join(f"{sigma_text(c, k)} * {fam}*[{lam}]" for (fam, lam), c in d.ordered())

    return f"a: {one(a, ka)}; b: {one(b, kb)}"
