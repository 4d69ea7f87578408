"""Exact scalar constants of the form ``q * pi**(p/2)``.

Every coefficient that shows up in the kernel chain and in the T*/U*
calculus is a product or quotient of rationals, powers of pi and Gamma
values at integer or half-integer arguments.  Such numbers are closed under
multiplication and division, so a single rational plus one half-integer
power of pi is enough to hold them exactly.  Adding two constants carrying
different powers of pi is refused: in this calculus it only happens when a
derivation went wrong.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, PiPowerMismatch, PoleError

__all__ = [
    "SymbolicConstant",
    "ZERO",
    "ONE",
    "PI",
    "gamma_half",
    "gamma_value",
    "reciprocal_gamma",
    "gamma_ratio",
    "gamma_ratio_limit",
    "pochhammer",
    "sphere_area",
]


@dataclass(frozen=True)
class SymbolicConstant:
    """The real number ``q * pi**(p/2)`` with ``q`` rational and ``p`` integer."""

    q: Fraction
    p: int = 0

    def __post_init__(self):
        q = Fraction(self.q)
        p = int(self.p)
        if q == 0:
            p = 0
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @classmethod
    def coerce(cls, value) -> "SymbolicConstant":
        if isinstance(value, SymbolicConstant):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value))
        raise TypeError(f"cannot convert {type(value).__name__} to SymbolicConstant")

    def is_zero(self) -> bool:
        return self.q == 0

    def is_rational(self) -> bool:
        return self.p == 0

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            other = SymbolicConstant.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.p != other.p:
            raise PiPowerMismatch(
                f"cannot add {self} and {other}: powers of pi differ"
            )
        return SymbolicConstant(self.q + other.q, self.p)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicConstant(-self.q, self.p)

    def __sub__(self, other):
        try:
            other = SymbolicConstant.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, float):
            return float(self) * other
        try:
            other = SymbolicConstant.coerce(other)
        except TypeError:
            return NotImplemented
        return SymbolicConstant(self.q * other.q, self.p + other.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, float):
            return float(self) / other
        try:
            other = SymbolicConstant.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by a zero SymbolicConstant")
        return SymbolicConstant(self.q / other.q, self.p - other.p)

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        return SymbolicConstant.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        return SymbolicConstant(self.q**n, self.p * n)

    # comparison / conversion ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, SymbolicConstant):
            return self.q == other.q and self.p == other.p
        if isinstance(other, (int, Rational)):
            return self.p == 0 and self.q == other
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.p))

    def __float__(self) -> float:
        if self.q == 0:
            return 0.0
        return float(self.q) * math.pi ** (self.p / 2)

    def __bool__(self) -> bool:
        return self.q != 0

    def to_text(self) -> str:
        """Exact rendering ``q*pi^(p/2)`` used in golden files."""
        if self.p == 0:
            return str(self.q)
        return f"{self.q}*pi^({self.p}/2)"

    def to_decimal(self, digits: int = 15) -> str:
        return f"{float(self):.{digits}g}"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"SymbolicConstant({self.to_text()})"


ZERO = SymbolicConstant(Fraction(0))
ONE = SymbolicConstant(Fraction(1))
PI = SymbolicConstant(Fraction(1), 2)


def pochhammer(a, n: int):
    """Rising factorial ``(a)_n`` for exact ``a`` and integer ``n >= 0``."""
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    out = Fraction(1) if isinstance(a, (int, Rational)) else 1
    for j in range(n):
        out *= a + j
    return out


def gamma_half(two_z: int) -> SymbolicConstant:
    """Exact ``Gamma(two_z / 2)`` for ``two_z >= 1``.

    >>> gamma_half(5)
    SymbolicConstant(3/4*pi^(1/2))
    """
    two_z = int(two_z)
    if two_z <= 0:
        raise PoleError(f"Gamma({two_z}/2): use gamma_value or gamma_ratio_limit")
    if two_z % 2 == 0:
        return SymbolicConstant(Fraction(math.factorial(two_z // 2 - 1)))
    n = (two_z - 1) // 2
    # Gamma(n + 1/2) = (2n)! / (4^n n!) * sqrt(pi)
    return SymbolicConstant(
        Fraction(math.factorial(2 * n), 4**n * math.factorial(n)), 1
    )


def gamma_value(two_z: int) -> SymbolicConstant:
    """``Gamma(two_z / 2)`` for any half-integer argument that is not a pole."""
    two_z = int(two_z)
    if two_z >= 1:
        return gamma_half(two_z)
    if two_z % 2 == 0:
        raise PoleError(f"Gamma has a pole at {two_z // 2}")
    # walk up with Gamma(z) = Gamma(z + 1) / z
    value = gamma_half(two_z + 2 * ((1 - two_z) // 2 + 1))
    z2 = two_z + 2 * ((1 - two_z) // 2 + 1)
    while z2 > two_z:
        z2 -= 2
        value = value / Fraction(z2, 2)
    return value


def reciprocal_gamma(two_z: int) -> SymbolicConstant:
    """``1 / Gamma(two_z / 2)``, equal to zero at the poles."""
    two_z = int(two_z)
    if two_z <= 0 and two_z % 2 == 0:
        return ZERO
    return ONE / gamma_value(two_z)


def gamma_ratio(two_a: int, two_b: int) -> SymbolicConstant:
    """``lim_{eps->0} Gamma(a + eps) / Gamma(b + eps)`` with ``a = two_a/2``, ``b = two_b/2``.

    When ``a - b`` is an integer the limit is a finite Pochhammer product and
    exists even if both arguments are poles.  Otherwise a pole in the
    denominator gives zero and a pole in the numerator is an error.
    """
    two_a, two_b = int(two_a), int(two_b)
    if (two_a - two_b) % 2 == 0:
        n = (two_a - two_b) // 2
        b = Fraction(two_b, 2)
        if n >= 0:
            value = pochhammer(b, n)
        else:
            den = pochhammer(Fraction(two_a, 2), -n)
            if den == 0:
                raise PoleError(f"Gamma({Fraction(two_a, 2)}) is a pole but Gamma({b}) is not")
            value = 1 / den
        return SymbolicConstant(Fraction(value))
    return gamma_value(two_a) * reciprocal_gamma(two_b)


def gamma_ratio_limit(neg_a: int, neg_b: int) -> Fraction:
    """``lim_{eps->0} Gamma(-neg_a + eps) / Gamma(-neg_b + eps)`` at two poles.

    Both arguments are nonpositive integers; near ``-n`` the Gamma function
    behaves like ``(-1)**n / (n! * eps)``, so the ratio tends to
    ``(-1)**(neg_a - neg_b) * neg_b! / neg_a!``.
    """
    if neg_a < 0 or neg_b < 0:
        raise DomainError("gamma_ratio_limit expects nonnegative integers")
    sign = -1 if (neg_a - neg_b) % 2 else 1
    return Fraction(sign * math.factorial(neg_b), math.factorial(neg_a))


def sphere_area(n: int) -> SymbolicConstant:
    """Area ``sigma_n`` of the unit sphere S^(n-1) in R^n."""
    if n < 1:
        raise DomainError(f"sphere_area needs n >= 1, got {n}")
    return SymbolicConstant(Fraction(2), n) / gamma_half(n)
