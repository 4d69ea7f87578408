"""The real Clifford algebra R_{0,m+1} and finite-difference Dirac operators.

Blades are stored as bitmasks over the generators ``e_0 ... e_m``: bit ``i``
set means ``e_i`` is a factor, always in increasing index order.  Every
generator squares to ``-1``.  The conjugate generator ``e0bar`` is ``-e_0``,
so the generalized Cauchy-Riemann operator ``D = (d/dx0 + e0bar dx)/2``
equals ``e0bar * Dirac / 2`` with ``Dirac = sum_a e_a d/dx_a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, DomainError, EvaluationError

__all__ = [
    "CliffordContext",
    "Multivector",
    "HalfSpacePoint",
    "geometric_product",
    "paravector_split",
    "paravector_join",
    "blade_sign",
    "partial_fd",
    "dirac_fd",
    "cauchy_riemann_fd",
    "cauchy_riemann_conj_fd",
    "laplacian_fd",
]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def blade_sign(a: int, b: int) -> int:
    """Sign of ``e_A e_B`` relative to the canonical blade ``e_{A xor B}``."""
    swaps = 0
    rest = a >> 1
    while rest:
        swaps += _popcount(rest & b)
        rest >>= 1
    # each shared generator contributes e_i^2 = -1
    swaps += _popcount(a & b)
    return -1 if swaps & 1 else 1


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _mask(indices: Iterable[int]) -> int:
    idx = list(indices)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError(f"blade indices must be strictly increasing, got {idx}")
    mask = 0
    for i in idx:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class CliffordContext:
    """Generators ``e_0, ..., e_m`` of R_{0,m+1}; ``m`` is the boundary dimension."""

    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise DomainError(f"boundary dimension must be an integer >= 2, got {self.m!r}")

    @property
    def n_generators(self) -> int:
        return self.m + 1

    def scalar(self, value=1) -> "Multivector":
        return Multivector(self, {0: value})

    def e(self, i: int) -> "Multivector":
        if not 0 <= i <= self.m:
            raise DimensionMismatch(f"generator e_{i} outside e_0..e_{self.m}")
        return Multivector(self, {1 << i: 1})

    def blade(self, indices: Sequence[int], value=1) -> "Multivector":
        mask = _mask(indices)
        if mask >> (self.m + 1):
            raise DimensionMismatch(f"blade {tuple(indices)} outside e_0..e_{self.m}")
        return Multivector(self, {mask: value})

    def e0bar(self) -> "Multivector":
        return Multivector(self, {1: -1})

    def vector(self, x0, x_vec: Sequence) -> "Multivector":
        """The paravector ``x0 e_0 + sum_j x_j e_j``."""
        if len(x_vec) != self.m:
            raise DimensionMismatch(f"expected {self.m} components, got {len(x_vec)}")
        coeffs = {1: x0}
        for j, xj in enumerate(x_vec, start=1):
            coeffs[1 << j] = xj
        return Multivector(self, coeffs)

    def boundary_vector(self, x_vec: Sequence) -> "Multivector":
        """``sum_j x_j e_j`` with ``j = 1..m``."""
        if len(x_vec) != self.m:
            raise DimensionMismatch(f"expected {self.m} components, got {len(x_vec)}")
        return Multivector(self, {1 << j: xj for j, xj in enumerate(x_vec, start=1)})


class Multivector:
    """Element of R_{0,m+1} as a sparse map from blade bitmask to coefficient.

    Coefficients may be ``Fraction`` (exact paths) or ``float`` (numeric
    paths); zero entries are dropped on construction.
    """

    __slots__ = ("context", "_coeffs")

    def __init__(self, context: CliffordContext, coeffs: Mapping[int, object] | None = None):
        self.context = context
        limit = 1 << (context.m + 1)
        clean = {}
        for mask, c in (coeffs or {}).items():
            if not 0 <= mask < limit:
                raise DimensionMismatch(f"blade mask {mask} outside the algebra")
            if c != 0:
                clean[mask] = c
        self._coeffs = clean

    @property
    def coeffs(self) -> dict[int, object]:
        return dict(self._coeffs)

    def coefficient(self, indices: Sequence[int] = ()) -> object:
        return self._coeffs.get(_mask(indices), 0)

    def blades(self) -> list[tuple[tuple[int, ...], object]]:
        return [(_indices(k), self._coeffs[k]) for k in sorted(self._coeffs, key=lambda k: (_popcount(k), k))]

    def scalar_part(self):
        return self._coeffs.get(0, 0)

    def grade(self, r: int) -> "Multivector":
        return Multivector(self.context, {k: c for k, c in self._coeffs.items() if _popcount(k) == r})

    def _check(self, other: "Multivector"):
        if other.context != self.context:
            raise DimensionMismatch(
                f"context mismatch: m={self.context.m} vs m={other.context.m}"
            )

    def _lift(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            self._check(other)
            return other
        return Multivector(self.context, {0: other})

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return Multivector(self.context, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.context, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector(self.context, {k: c * other for k, c in self._coeffs.items()})

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(other, self)
        return Multivector(self.context, {k: other * c for k, c in self._coeffs.items()})

    def __truediv__(self, scalar):
        return Multivector(self.context, {k: c / scalar for k, c in self._coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.context == other.context and self._coeffs == other._coeffs
        if other == 0:
            return not self._coeffs
        return self == self._lift(other)

    def __hash__(self):
        return hash((self.context, frozenset(self._coeffs.items())))

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return math.sqrt(sum(float(c) ** 2 for c in self._coeffs.values()))

    def is_finite(self) -> bool:
        return all(math.isfinite(float(c)) for c in self._coeffs.values())

    def map(self, fn: Callable) -> "Multivector":
        return Multivector(self.context, {k: fn(c) for k, c in self._coeffs.items()})

    def __repr__(self):
        if not self._coeffs:
            return "Multivector(0)"
        parts = []
        for idx, c in self.blades():
            name = "1" if not idx else "e" + "".join(str(i) for i in idx)
            parts.append(f"{c}*{name}")
        return "Multivector(" + " + ".join(parts) + ")"


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    """Clifford product ``a b`` with ``e_i e_i = -1``."""
    if a.context != b.context:
        raise DimensionMismatch(f"context mismatch: m={a.context.m} vs m={b.context.m}")
    out: dict[int, object] = {}
    for ka, ca in a._coeffs.items():
        for kb, cb in b._coeffs.items():
            k = ka ^ kb
            term = ca * cb
            if blade_sign(ka, kb) < 0:
                term = -term
            out[k] = out.get(k, 0) + term
    return Multivector(a.context, out)


def paravector_split(f: Multivector) -> tuple[Multivector, Multivector]:
    """Write ``f = f1 + e0bar f2`` with ``f1, f2`` free of ``e_0``.

    A blade containing ``e_0`` is ``e_0 e_B = -e0bar e_B``, so its
    coefficient moves to ``f2`` with a sign flip.
    """
    f1, f2 = {}, {}
    for k, c in f._coeffs.items():
        if k & 1:
            f2[k ^ 1] = -c
        else:
            f1[k] = c
    return Multivector(f.context, f1), Multivector(f.context, f2)


def paravector_join(f1: Multivector, f2: Multivector) -> Multivector:
    """Inverse of :func:`paravector_split`: ``f1 + e0bar f2``."""
    for part in (f1, f2):
        if any(k & 1 for k in part._coeffs):
            raise DomainError("paravector parts must not contain e_0")
    return f1 + geometric_product(f1.context.e0bar(), f2)


@dataclass(frozen=True)
class HalfSpacePoint:
    """Point ``x = x0 e_0 + x_vec`` of the open upper half-space."""

    x0: object
    x_vec: tuple

    def __post_init__(self):
        object.__setattr__(self, "x_vec", tuple(self.x_vec))
        if not self.x0 > 0:
            raise DomainError(f"x0 must be strictly positive, got {self.x0}")

    @property
    def m(self) -> int:
        return len(self.x_vec)

    @property
    def r2(self):
        """``|x_vec|^2``, exact when the coordinates are exact."""
        return sum((xj * xj for xj in self.x_vec), 0 * self.x0)

    @property
    def norm2(self):
        return self.x0 * self.x0 + self.r2

    @property
    def norm(self) -> float:
        return math.sqrt(float(self.norm2))

    @property
    def r(self) -> float:
        return math.sqrt(float(self.r2))

    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in (self.x0, *self.x_vec))

    def as_float(self) -> "HalfSpacePoint":
        return HalfSpacePoint(float(self.x0), tuple(float(v) for v in self.x_vec))

    def shifted(self, axis: int, step: float) -> "HalfSpacePoint":
        """Move coordinate ``axis`` (0 is ``x0``) by ``step``."""
        if axis == 0:
            return HalfSpacePoint(self.x0 + step, self.x_vec)
        vec = list(self.x_vec)
        vec[axis - 1] = vec[axis - 1] + step
        return HalfSpacePoint(self.x0, tuple(vec))

    def scaled(self, s: float) -> "HalfSpacePoint":
        return HalfSpacePoint(self.x0 * s, tuple(v * s for v in self.x_vec))

    def array(self) -> np.ndarray:
        return np.array([float(self.x0), *map(float, self.x_vec)])


Kernel = Callable[[HalfSpacePoint], Multivector]


def _check_stencil(p: HalfSpacePoint, h: float):
    if h <= 0:
        raise DomainError(f"step must be positive, got {h}")
    if not float(p.x0) > 2 * h:
        raise DomainError(f"point x0={p.x0} is within 2h of the boundary")


def _eval(kernel: Kernel, q: HalfSpacePoint) -> Multivector:
    val = kernel(q)
    if not val.is_finite():
        raise EvaluationError(f"non-finite kernel value at {q}")
    return val


def partial_fd(kernel: Kernel, p: HalfSpacePoint, axis: int, h: float) -> Multivector:
    """Second-order central difference of ``kernel`` along one coordinate."""
    _check_stencil(p, h)
    fp = _eval(kernel, p.shifted(axis, h))
    fm = _eval(kernel, p.shifted(axis, -h))
    return (fp - fm) * (1.0 / (2 * h))


def dirac_fd(kernel: Kernel, p: HalfSpacePoint, h: float, *, ctx: CliffordContext | None = None) -> Multivector:
    """Central-difference approximation of ``sum_a e_a dF/dx_a`` (left action)."""
    ctx = ctx or CliffordContext(p.m)
    out = Multivector(ctx)
    for a in range(ctx.m + 1):
        out = out + geometric_product(ctx.e(a), partial_fd(kernel, p, a, h))
    return out


def cauchy_riemann_fd(kernel: Kernel, p: HalfSpacePoint, h: float) -> Multivector:
    """``D F = (dF/dx0 + e0bar dF)/2`` by central differences."""
    ctx = CliffordContext(p.m)
    out = partial_fd(kernel, p, 0, h)
    e0bar = ctx.e0bar()
    for j in range(1, ctx.m + 1):
        out = out + geometric_product(e0bar, geometric_product(ctx.e(j), partial_fd(kernel, p, j, h)))
    return out * 0.5


def cauchy_riemann_conj_fd(kernel: Kernel, p: HalfSpacePoint, h: float) -> Multivector:
    """``Dbar F = (dF/dx0 - e0bar dF)/2`` by central differences."""
    ctx = CliffordContext(p.m)
    out = partial_fd(kernel, p, 0, h)
    e0bar = ctx.e0bar()
    for j in range(1, ctx.m + 1):
        out = out - geometric_product(e0bar, geometric_product(ctx.e(j), partial_fd(kernel, p, j, h)))
    return out * 0.5


def laplacian_fd(kernel: Kernel, p: HalfSpacePoint, h: float) -> Multivector:
    """Seven-point style second-order Laplacian in all ``m+1`` variables."""
    _check_stencil(p, h)
    center = _eval(kernel, p)
    out = center * (-2.0 * (p.m + 1))
    for a in range(p.m + 1):
        out = out + _eval(kernel, p.shifted(a, h)) + _eval(kernel, p.shifted(a, -h))
    return out * (1.0 / (h * h))
