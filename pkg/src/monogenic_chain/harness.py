"""Finite-difference and quadrature checks of the kernel chain.

Every check returns a :class:`ResidualReport`.  Residuals are maxima over a
sample of interior points; convergence orders come from repeating the check
at three step sizes on a subset of the sample.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.signal import fftconvolve
from scipy.stats import special_ortho_group

from .clifford import (
    CliffordContext,
    HalfSpacePoint,
    Multivector,
    cauchy_riemann_fd,
    geometric_product,
    laplacian_fd,
    partial_fd,
)
from .distributions import boundary_value, evaluate_function, is_delta_type
from .errors import DomainError, UnsupportedRequest
from .kernels import ChainKernel, eval_kernel

__all__ = [
    "GridSpec",
    "ResidualReport",
    "DEFAULT_TOL",
    "ORDER_STEPS",
    "sample_points",
    "check_monogenic",
    "check_harmonic",
    "check_chain_step",
    "check_homogeneity",
    "check_rotation",
    "boundary_limit_study",
    "function_components",
    "radial_bump",
    "poisson_quadrature_check",
    "reports_to_csv",
    "CSV_COLUMNS",
]

DEFAULT_TOL = 1e-6
ORDER_STEPS = (1e-2, 5e-3, 2.5e-3)
CSV_COLUMNS = ("test_id", "n", "m", "h_or_x0", "residual", "order", "pass")


def _tolerance(default: float) -> float:
    value = os.environ.get("MONOGENIC_CHAIN_TOL")
    return float(value) if value else default


def _threads() -> int:
    value = os.environ.get("MONOGENIC_CHAIN_THREADS")
    return max(1, int(value)) if value else 1


def _pmap(fn: Callable, items: Sequence) -> list:
    threads = _threads()
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class GridSpec:
    """Square boundary grid for the quadrature checks."""

    m: int
    extent: float
    resolution: int
    x0_levels: tuple[float, ...] = (0.2, 0.1, 0.05)

    def __post_init__(self):
        if self.m not in (2, 3):
            raise DomainError(f"grids are supported for m in {{2, 3}}, got {self.m}")
        if self.resolution < 16:
            raise DomainError(f"resolution must be >= 16, got {self.resolution}")
        if self.extent <= 0:
            raise DomainError("extent must be positive")

    @property
    def spacing(self) -> float:
        return 2 * self.extent / self.resolution

    def centers(self) -> np.ndarray:
        """Cell-centred coordinates along one axis, symmetric about 0."""
        return (np.arange(self.resolution) - (self.resolution - 1) / 2) * self.spacing


@dataclass
class ResidualReport:
    """Outcome of one check.

    ``levels`` holds ``(h_or_x0, residual)`` pairs when the check runs over
    several step sizes or heights; ``components`` holds named sub-residuals.
    """

    test_id: str
    n: int | None
    m: int
    h_or_x0: float
    residual: float
    tol: float
    order: float = float("nan")
    passed: bool = False
    levels: list[tuple[float, float]] = field(default_factory=list)
    components: dict[str, float] = field(default_factory=dict)
    component_tols: dict[str, float] = field(default_factory=dict)
    note: str = ""

    def rows(self) -> list[tuple]:
        # levels are convergence data; only the final row carries a verdict
        out = [(f"{self.test_id}@level", self.n, self.m, h, r, float("nan"), None)
               for h, r in self.levels]
        for name, r in self.components.items():
            tol = self.component_tols.get(name, self.tol)
            out.append((f"{self.test_id}:{name}", self.n, self.m, self.h_or_x0, r, float("nan"), r < tol))
        out.append((self.test_id, self.n, self.m, self.h_or_x0, self.residual, self.order, self.passed))
        return out


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "PASS" if x else "FAIL"
    if isinstance(x, float):
        return "nan" if math.isnan(x) else f"{x:.15g}"
    return str(x)


def reports_to_csv(reports: Iterable[ResidualReport]) -> str:
    """CSV with header ``test_id,n,m,h_or_x0,residual,order,pass``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in reports:
        for row in rep.rows():
            writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def sample_points(
    m: int,
    count: int,
    seed: int = 0,
    x0_range: tuple[float, float] = (1.0, 2.0),
    box: float = 1.0,
) -> list[HalfSpacePoint]:
    """Random unit-scale points with ``x0`` in ``x0_range`` and ``|x_j| <= box``."""
    rng = np.random.default_rng(seed)
    x0 = rng.uniform(*x0_range, size=count)
    xv = rng.uniform(-box, box, size=(count, m))
    return [HalfSpacePoint(float(a), tuple(map(float, v))) for a, v in zip(x0, xv)]


def _validate(sample: Sequence[HalfSpacePoint], m: int, h: float):
    if not sample:
        raise DomainError("empty sample")
    for p in sample:
        if p.m != m:
            raise DomainError(f"sample point {p} is not in R^{m + 1}")
        if float(p.x0) <= 2 * h or p.norm <= 2 * h:
            raise DomainError(f"sample point {p} is within 2h of the boundary or origin")


def _order(residuals: Sequence[float], steps: Sequence[float]) -> float:
    """Least-squares slope of log residual against log step."""
    pairs = [(math.log(h), math.log(r)) for h, r in zip(steps, residuals) if r > 0]
    if len(pairs) < 3:
        return float("nan")
    xs, ys = zip(*pairs)
    return float(np.polyfit(xs, ys, 1)[0])


def _residual_study(
    test_id: str,
    n: int | None,
    m: int,
    sample: Sequence[HalfSpacePoint],
    h: float,
    tol: float,
    residual_at: Callable[[HalfSpacePoint, float], float],
    order_points: int = 8,
    steps: Sequence[float] = ORDER_STEPS,
) -> ResidualReport:
    _validate(sample, m, max(max(steps), h))
    residual = max(_pmap(lambda p: residual_at(p, h), sample))
    subset = sample[:order_points]
    levels = [(s, max(residual_at(p, s) for p in subset)) for s in steps]
    order = _order([r for _, r in levels], steps)
    return ResidualReport(test_id, n, m, h, residual, tol, order, residual < tol, levels)


def check_monogenic(
    n: int | None,
    m: int,
    sample: Sequence[HalfSpacePoint],
    h: float = 1e-4,
    tol: float | None = None,
    kernel: Callable[[HalfSpacePoint], Multivector] | None = None,
) -> ResidualReport:
    """Max of ``|D C_n|`` over the sample, by central differences.

    ``kernel`` overrides the chain kernel, e.g. with a constant function.
    """
    tol = _tolerance(DEFAULT_TOL) if tol is None else tol
    fn = kernel if kernel is not None else ChainKernel(n, m, "C")
    return _residual_study(
        f"monogenic_C{n}" if kernel is None else "monogenic_custom", n, m, sample, h, tol,
        lambda p, s: cauchy_riemann_fd(fn, p, s).norm(),
    )


def check_harmonic(
    n: int,
    m: int,
    sample: Sequence[HalfSpacePoint],
    h: float = 1e-3,
    tol: float = 1e-3,
) -> ResidualReport:
    """Max of ``|Laplacian A_n|`` and ``|Laplacian B_n|`` over the sample."""
    fa = ChainKernel(n, m, "A")
    fb = ChainKernel(n, m, "B")

    def res(p, s):
        la = laplacian_fd(fa.as_multivector, p, s).norm()
        lb = laplacian_fd(fb.as_multivector, p, s).norm()
        return max(la, lb)

    return _residual_study(f"harmonic_{n}", n, m, sample, h, tol, res)


def _boundary_dirac(kernel: Callable, p: HalfSpacePoint, h: float, ctx: CliffordContext) -> Multivector:
    out = Multivector(ctx)
    for j in range(1, ctx.m + 1):
        out = out + geometric_product(ctx.e(j), partial_fd(kernel, p, j, h))
    return out


def check_chain_step(
    n: int,
    m: int,
    sample: Sequence[HalfSpacePoint],
    h: float = 1e-4,
    tol: float | None = None,
) -> ResidualReport:
    """Residuals of the four ladder equations linking ``n`` to ``n - 1``.

    ``d/dx0 A_n = A_{n-1}``, ``-dx A_n = B_{n-1}``, ``d/dx0 B_n = B_{n-1}``
    and ``-dx B_n = A_{n-1}``.  The last one is checked as a multivector
    identity, so a nonzero bivector part would count as a residual.
    """
    if n >= 3:
        raise UnsupportedRequest("upstream closed form unavailable for n >= 3")
    tol = _tolerance(DEFAULT_TOL) if tol is None else tol
    ctx = CliffordContext(m)
    ka, kb = ChainKernel(n, m, "A"), ChainKernel(n, m, "B")
    pa, pb = ChainKernel(n - 1, m, "A"), ChainKernel(n - 1, m, "B")

    def equations(p, s):
        ta, tb = pa.as_multivector(p), pb.as_multivector(p)
        return {
            "d0A=A_prev": (partial_fd(ka.as_multivector, p, 0, s) - ta).norm(),
            "-dxA=B_prev": (-_boundary_dirac(ka.as_multivector, p, s, ctx) - tb).norm(),
            "d0B=B_prev": (partial_fd(kb.as_multivector, p, 0, s) - tb).norm(),
            "-dxB=A_prev": (-_boundary_dirac(kb.as_multivector, p, s, ctx) - ta).norm(),
        }

    _validate(sample, m, max(ORDER_STEPS))
    per_point = _pmap(lambda p: equations(p, h), sample)
    components = {k: max(d[k] for d in per_point) for k in per_point[0]}
    residual = max(components.values())
    subset = sample[:8]
    levels = [(s, max(max(equations(p, s).values()) for p in subset)) for s in ORDER_STEPS]
    order = _order([r for _, r in levels], ORDER_STEPS)
    return ResidualReport(
        f"chain_step_{n}", n, m, h, residual, tol, order, residual < tol, levels, components
    )


def check_homogeneity(
    n: int,
    m: int,
    sample: Sequence[HalfSpacePoint],
    scales: Sequence[float] = (2.0, 0.5),
    tol: float = 1e-12,
) -> ResidualReport:
    """Relative residual of ``K(s x) = s^(n-m+1) K(x)`` for ``K = A_n, B_n``."""
    degree = n - m + 1
    worst = 0.0
    for p in sample:
        a, b = eval_kernel(n, m, p)
        base = max(abs(a), float(np.abs(b).max()) if len(b) else 0.0)
        for s in scales:
            a2, b2 = eval_kernel(n, m, p.scaled(s))
            f = s**degree
            err = max(abs(a2 - f * a), float(np.abs(b2 - f * b).max()))
            worst = max(worst, err / (abs(f) * base))
    rep = ResidualReport(f"homogeneity_{n}", n, m, float("nan"), worst, tol, passed=worst < tol)
    rep.note = f"degree {degree}"
    return rep


def check_rotation(
    n: int,
    m: int,
    sample: Sequence[HalfSpacePoint],
    seed: int = 0,
    tol: float = 1e-12,
) -> ResidualReport:
    """``A_n`` invariant and ``B_n`` equivariant under random rotations of R^m."""
    rots = special_ortho_group.rvs(m, size=len(sample), random_state=seed)
    if m == 1:
        rots = np.ones((len(sample), 1, 1))
    worst = 0.0
    for p, rot in zip(sample, np.reshape(rots, (len(sample), m, m))):
        a, b = eval_kernel(n, m, p)
        q = HalfSpacePoint(p.x0, tuple(rot @ np.array(p.x_vec, dtype=float)))
        a2, b2 = eval_kernel(n, m, q)
        scale = max(abs(a), float(np.abs(b).max()))
        worst = max(worst, abs(a2 - a) / scale, float(np.abs(b2 - rot @ b).max()) / scale)
    return ResidualReport(f"rotation_{n}", n, m, float("nan"), worst, tol, passed=worst < tol)


def function_components(n: int, m: int) -> str:
    """Components of ``(a_n, b_n)`` with a function representative away from the origin."""
    a_dist, b_dist = boundary_value(n, m)

    def delta_only(d):
        return all(is_delta_type(f, lam, m) for (f, lam) in d.terms)

    return "".join(name for name, d in (("A", a_dist), ("B", b_dist)) if not delta_only(d))


def boundary_limit_study(
    n: int,
    m: int,
    x_fixed: Sequence[float],
    x0_levels: Sequence[float] = (0.1, 0.05, 0.01, 0.005),
    tol: float = 1e-3,
    components: str = "AB",
) -> ResidualReport:
    """Distance between ``(A_n, B_n)(x0, x_fixed)`` and ``(a_n, b_n)(x_fixed)``.

    Parameters
    ----------
    components : str
        Which of ``"A"`` and ``"B"`` to compare.  A component whose boundary
        value is a delta derivative has no function representative, so
        requesting it is refused; :func:`function_components` lists the
        admissible ones.

    The study passes when the error decreases strictly across the levels and
    the last one is below ``tol``.
    """
    xv = np.asarray(x_fixed, dtype=float)
    if xv.shape != (m,) or not np.any(xv):
        raise DomainError("x_fixed must be a nonzero point of R^m")
    if not components or set(components) - {"A", "B"}:
        raise DomainError(f"components must be drawn from 'AB', got {components!r}")
    allowed = function_components(n, m)
    refused = [c for c in components if c not in allowed]
    if refused:
        raise UnsupportedRequest(
            f"boundary value {'/'.join(c.lower() + '_' + str(n) for c in refused)} is a delta derivative, "
            "not a function"
        )
    a_dist, b_dist = boundary_value(n, m)
    a_lim, _ = evaluate_function(a_dist, xv)
    _, b_lim = evaluate_function(b_dist, xv)
    levels = []
    for x0 in x0_levels:
        a, b = eval_kernel(n, m, HalfSpacePoint(float(x0), tuple(xv)))
        err = 0.0
        if "A" in components:
            err = max(err, abs(a - a_lim))
        if "B" in components:
            err = max(err, float(np.abs(b - b_lim).max()))
        levels.append((float(x0), err))
    errs = [e for _, e in levels]
    monotone = all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
    order = _order(errs, list(x0_levels))
    rep = ResidualReport(
        f"boundary_limit_{n}", n, m, levels[-1][0], errs[-1], tol, order,
        monotone and errs[-1] < tol, levels,
    )
    rep.note = "components " + "".join(sorted(set(components)))
    return rep


# Poisson / Hilbert quadrature in m = 2 -------------------------------------------

def radial_bump(radius: float) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Smooth compactly supported ``exp(1 - 1/(1 - r^2/R^2))`` with peak value 1."""

    def f(x, y):
        r2 = (x * x + y * y) / radius**2
        out = np.zeros(np.broadcast(x, y).shape)
        inside = r2 < 1
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - r2[inside]))
        return out

    return f


@dataclass
class _Quadrature:
    grid: GridSpec
    values: np.ndarray

    def offsets(self):
        n = self.grid.resolution
        o = (np.arange(2 * n - 1) - (n - 1)) * self.grid.spacing
        return np.meshgrid(o, o, indexing="ij")

    def convolve(self, kernel: np.ndarray) -> np.ndarray:
        dx = self.grid.spacing
        return fftconvolve(self.values, kernel, mode="same") * dx * dx

    def poisson(self, x0: float) -> np.ndarray:
        ox, oy = self.offsets()
        return self.convolve(x0 / (2 * np.pi * (x0 * x0 + ox * ox + oy * oy) ** 1.5))

    def conjugate_poisson(self, x0: float) -> tuple[np.ndarray, np.ndarray]:
        ox, oy = self.offsets()
        den = 2 * np.pi * (x0 * x0 + ox * ox + oy * oy) ** 1.5
        return self.convolve(-ox / den), self.convolve(-oy / den)

    def hilbert_pv(self) -> tuple[np.ndarray, np.ndarray]:
        """Principal value by symmetric pairs.

        The kernel is odd and its value at the zero offset is dropped, so
        the contributions of every pair of offsets ``+o`` and ``-o`` combine
        into ``K(o) (f(x - o) - f(x + o))``; the singular part cancels.
        """
        ox, oy = self.offsets()
        r2 = ox * ox + oy * oy
        with np.errstate(divide="ignore", invalid="ignore"):
            den = np.where(r2 > 0, 2 * np.pi * r2**1.5, np.inf)
        return self.convolve(-ox / den), self.convolve(-oy / den)


def _poisson_direct(f_vals: np.ndarray, xs: np.ndarray, ys: np.ndarray, dx: float,
                    x0: float, px: float, py: float) -> float:
    r2 = (px - xs) ** 2 + (py - ys) ** 2
    return float(np.sum(f_vals * x0 / (2 * np.pi * (x0 * x0 + r2) ** 1.5)) * dx * dx)


def poisson_quadrature_check(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None,
    x0: float = 0.05,
    grid: GridSpec | None = None,
    x0_levels: Sequence[float] = (0.2, 0.1, 0.05),
    interior: float = 2.4,
    support: float = 3.0,
    tol: float = 5e-2,
    harmonic_tol: float = 1e-4,
    harmonic_h: float | None = None,
) -> ResidualReport:
    """Poisson and conjugate Poisson integrals of a test function in m = 2.

    Three components are reported:

    ``poisson``
        ``max |P * f - f|`` over grid points with ``|x| <= interior``,
        tabulated over ``x0_levels`` and required to decrease.
    ``hilbert``
        ``max |Q * f - H f|`` at the same points and height ``x0``, with
        ``H f`` from the principal-value lattice sum.
    ``harmonic``
        Finite-difference Laplacian in ``(x0, x1, x2)`` of ``P * f``
        evaluated directly at a few interior points.  The step defaults to
        ``x0 / 200``; the lattice sum varies on the scale of ``x0``, so a
        fixed step would let stencil truncation dominate at small heights.
    """
    f = f or radial_bump(support)
    grid = grid or GridSpec(2, support + 0.1, 320)
    c = grid.centers()
    X, Y = np.meshgrid(c, c, indexing="ij")
    vals = np.asarray(f(X, Y), dtype=float)
    edge = np.concatenate([vals[0], vals[-1], vals[:, 0], vals[:, -1]])
    if np.any(np.abs(edge) > 1e-14):
        raise DomainError("test function support is clipped by the grid")
    quad = _Quadrature(grid, vals)
    inner = X * X + Y * Y <= interior**2

    levels = sorted(set(x0_levels) | {x0}, reverse=True)
    poisson_levels = [(h0, float(np.abs(quad.poisson(h0) - vals)[inner].max())) for h0 in levels]
    p_err = dict(poisson_levels)[x0]
    errs = [e for _, e in poisson_levels]
    decreasing = all(e2 < e1 for e1, e2 in zip(errs, errs[1:])) or not np.any(vals)

    qx, qy = quad.conjugate_poisson(x0)
    hx, hy = quad.hilbert_pv()
    h_err = float(max(np.abs(qx - hx)[inner].max(), np.abs(qy - hy)[inner].max()))

    rng = np.random.default_rng(0)
    h = harmonic_h if harmonic_h is not None else x0 / 200
    lap = 0.0
    for _ in range(12):
        i, j = rng.integers(grid.resolution // 4, 3 * grid.resolution // 4, size=2)
        px, py = c[i], c[j]
        u = lambda a, b, d: _poisson_direct(vals, X, Y, grid.spacing, a, b, d)
        center = u(x0, px, py)
        total = (
            u(x0 + h, px, py) + u(x0 - h, px, py)
            + u(x0, px + h, py) + u(x0, px - h, py)
            + u(x0, px, py + h) + u(x0, px, py - h)
            - 6 * center
        )
        lap = max(lap, abs(total) / (h * h))

    components = {"poisson": p_err, "hilbert": h_err, "harmonic": lap}
    passed = p_err < tol and h_err < tol and lap < harmonic_tol and decreasing
    rep = ResidualReport(
        "poisson_quadrature", -1, 2, x0, max(p_err, h_err), tol, float("nan"), passed,
        poisson_levels, components, {"harmonic": harmonic_tol},
    )
    rep.note = f"grid {grid.resolution}x{grid.resolution}, spacing {grid.spacing:.4g}"
    return rep
