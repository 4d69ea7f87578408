"""Scalar special functions used by the kernel chain.

``F_m(v) = int_0^v eta^(m-1) / (1 + eta^2)^((m+1)/2) d eta`` is evaluated by
its two-step recurrence in ``m``; its value at infinity is exact.  The
terminating Gauss series and the real form of Gegenbauer polynomials at
imaginary argument back the closed-form expressions of the downstream
kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from scipy import special as _sp

from .constants import SymbolicConstant, gamma_half, pochhammer
from .errors import DomainError, UnsupportedRequest

__all__ = [
    "INFINITY",
    "f_m",
    "f_m_infinity",
    "f_tilde",
    "TerminatingHypergeometric",
    "hyp2f1_terminating",
    "hyp2f1_real",
    "gegenbauer_imag",
]

#: sentinel for ``v = +infinity``; the value at infinity is computed exactly
INFINITY = math.inf


def f_m_infinity(m: int) -> SymbolicConstant:
    """Exact ``F_m(+inf) = (sqrt(pi)/2) Gamma(m/2) / Gamma((m+1)/2)``."""
    if m < 1:
        raise DomainError(f"F_m needs m >= 1, got {m}")
    return SymbolicConstant(Fraction(1, 2), 1) * gamma_half(m) / gamma_half(m + 1)


def f_m(m: int, v: float) -> float:
    """Evaluate ``F_m(v)`` for ``v >= 0`` or ``v = INFINITY``.

    Parameters
    ----------
    m : int
        Order, ``m >= 1``.
    v : float
        Upper limit of the integral.

    Returns
    -------
    float
    """
    if m < 1:
        raise DomainError(f"F_m needs m >= 1, got {m}")
    if v < 0 or math.isnan(v):
        raise DomainError(f"F_m needs v >= 0, got {v}")
    if math.isinf(v):
        return float(f_m_infinity(m))
    v = float(v)
    s = math.sqrt(1.0 + v * v)
    if m % 2:
        value, start = math.atan(v), 3
    else:
        # 1 - 1/s written without cancellation
        value, start = v * v / (s * (1.0 + s)), 4
    ratio = v / s
    for k in range(start, m + 1, 2):
        # v^(k-2) / (1+v^2)^((k-1)/2) = (v/s)^(k-2) / s, safe for huge v
        tail = ratio ** (k - 2) / s
        value = (k - 2) / (k - 1) * value - tail / (k - 1)
    return value


def f_tilde(m: int, u: float) -> float:
    """``int_0^u d zeta / (1 + zeta^2)^((m-1)/2)`` via ``F_{m-2}(inf) - F_{m-2}(1/u)``."""
    if m <= 2:
        raise DomainError(f"f_tilde needs m > 2, got {m}")
    if u < 0:
        raise DomainError(f"f_tilde needs u >= 0, got {u}")
    if u == 0:
        return 0.0
    inner = 0.0 if math.isinf(u) else 1.0 / u
    return float(f_m_infinity(m - 2)) - f_m(m - 2, inner)


def _is_nonpos_int(x) -> bool:
    return isinstance(x, (int, Rational)) and Fraction(x).denominator == 1 and x <= 0


@dataclass(frozen=True)
class TerminatingHypergeometric:
    """Gauss series ``2F1(a, b; c; z)`` that stops because ``a`` or ``b`` is a nonpositive integer."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (_is_nonpos_int(self.a) or _is_nonpos_int(self.b)):
            raise UnsupportedRequest(
                f"2F1({self.a}, {self.b}; {self.c}; z) does not terminate"
            )
        n = self.length - 1
        if _is_nonpos_int(self.c) and -self.c < n:
            raise DomainError(f"2F1 lower parameter {self.c} hits a pole before termination")

    @property
    def length(self) -> int:
        """Number of terms of the series."""
        cands = [-int(x) for x in (self.a, self.b) if _is_nonpos_int(x)]
        return min(cands) + 1

    def coefficients(self) -> list[Fraction]:
        """Exact ``(a)_n (b)_n / ((c)_n n!)`` for every surviving ``n``."""
        out = []
        for n in range(self.length):
            out.append(
                pochhammer(self.a, n) * pochhammer(self.b, n)
                / (pochhammer(self.c, n) * math.factorial(n))
            )
        return out


def hyp2f1_terminating(h: TerminatingHypergeometric, z):
    """Evaluate the finite series exactly (``Fraction`` in, ``Fraction`` out).

    Examples
    --------
    >>> hyp2f1_terminating(TerminatingHypergeometric(-1, 1, 2), Fraction(1, 3))
    Fraction(5, 6)
    """
    total = 0 * z
    power = 1 + 0 * z
    for coeff in h.coefficients():
        total = total + coeff * power
        power = power * z
    return total


def hyp2f1_real(a: float, b: float, c: float, z: float) -> float:
    """Float ``2F1`` on ``|z| < 1`` for the near-axis kernel forms."""
    if not abs(z) < 1:
        raise DomainError(f"series form requires |z| < 1, got {z}")
    return float(_sp.hyp2f1(a, b, c, z))


def gegenbauer_imag(k: int, alpha, w):
    """The real number ``i^k C_k^alpha(i w)``.

    Uses the Gegenbauer three-term recurrence multiplied through by ``i^k``::

        k g_k = -2 w (k + alpha - 1) g_{k-1} + (k + 2 alpha - 2) g_{k-2}

    with ``g_0 = 1`` and ``g_1 = -2 alpha w``.  Exact inputs give exact output.
    """
    if k < 0:
        raise DomainError("gegenbauer_imag needs k >= 0")
    g_prev = 1 + 0 * w
    if k == 0:
        return g_prev
    g = -2 * alpha * w
    for j in range(2, k + 1):
        g, g_prev = (-2 * w * (j + alpha - 1) * g + (j + 2 * alpha - 2) * g_prev) / j, g
    return g
