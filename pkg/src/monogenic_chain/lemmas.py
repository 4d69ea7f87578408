"""Catalog of exact identities between boundary distributions.

Each catalog entry expands into instances.  Both sides of an instance are
computed independently through the calculus and compared exactly.  Instances
that need a larger dimension than the one requested are reported as SKIP.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .distributions import (
    BoundaryDistribution,
    ParavectorDistribution,
    boundary_c,
    boundary_value,
    convolve,
    delta,
    dirac_action,
    hilbert,
    hilbert_kernel,
)
from .errors import ChainError, DimensionTooSmall, DomainError

__all__ = ["InstanceResult", "LemmaReport", "LEMMA_IDS", "verify_lemma", "verify_all", "describe"]


@dataclass(frozen=True)
class InstanceResult:
    label: str
    indices: tuple[int, ...]
    status: str  # PASS, FAIL or SKIP
    lhs: str = ""
    rhs: str = ""
    detail: str = ""


@dataclass
class LemmaReport:
    lemma_id: str
    m: int
    instances: list[InstanceResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status != "FAIL" for r in self.instances)

    def counts(self) -> dict[str, int]:
        out = {"PASS": 0, "FAIL": 0, "SKIP": 0}
        for r in self.instances:
            out[r.status] += 1
        return out


Thunk = Callable[[], tuple[object, object]]


def _a(n, m):
    return boundary_value(n, m)[0]


def _b(n, m):
    return boundary_value(n, m)[1]


def _c(n, m):
    return boundary_c(n, m)


def _pv(d: BoundaryDistribution) -> ParavectorDistribution:
    return ParavectorDistribution.scalar(d)


def _e0b(d: BoundaryDistribution) -> ParavectorDistribution:
    return ParavectorDistribution.e0bar_times(d)


def _minus_e0bar_dirac(c: ParavectorDistribution) -> ParavectorDistribution:
    return -(c.dirac().times_e0bar())


def _e0bar_hilbert(c: ParavectorDistribution) -> ParavectorDistribution:
    return c.hilbert().times_e0bar()


def _ndx(d: BoundaryDistribution) -> BoundaryDistribution:
    return -dirac_action(d)


# catalog builders: each returns [(label, indices, thunk)] ----------------------

def _lem41_i(m):
    return [
        ("-dx a_{-1} = b_{-2}", (-1, -2), lambda: (_ndx(_a(-1, m)), _b(-2, m))),
        ("-dx b_{-1} = a_{-2}", (-1, -2), lambda: (_ndx(_b(-1, m)), _a(-2, m))),
        ("-e0bar dx c_{-1} = c_{-2}", (-1, -2), lambda: (_minus_e0bar_dirac(_c(-1, m)), _c(-2, m))),
    ]


def _lem41_ii(m):
    return [
        ("H[a_{-2}] = b_{-2}", (-2,), lambda: (hilbert(_a(-2, m)), _b(-2, m))),
        ("H[b_{-2}] = a_{-2}", (-2,), lambda: (hilbert(_b(-2, m)), _a(-2, m))),
        ("e0bar H[c_{-2}] = c_{-2}", (-2,), lambda: (_e0bar_hilbert(_c(-2, m)), _c(-2, m))),
    ]


def _lem41_iii(m):
    return [
        ("c_{-1} * a_{-2} = c_{-2}", (-1, -2), lambda: (_c(-1, m).convolve(_pv(_a(-2, m))), _c(-2, m))),
        ("c_{-1} * e0bar b_{-2} = c_{-2}", (-1, -2), lambda: (_c(-1, m).convolve(_e0b(_b(-2, m))), _c(-2, m))),
        ("c_{-1} * c_{-2} = c_{-2}", (-1, -2), lambda: (_c(-1, m).convolve(_c(-2, m)), _c(-2, m))),
    ]


def _lem2_i(m, kmax=5):
    out = []
    for k in range(1, kmax + 1):
        out.append((f"-dx a_{{-{k}}} = b_{{-{k + 1}}}", (-k, -k - 1),
                    lambda k=k: (_ndx(_a(-k, m)), _b(-k - 1, m))))
        out.append((f"-dx b_{{-{k + 1}}} = a_{{-{k + 2}}}", (-k - 1, -k - 2),
                    lambda k=k: (_ndx(_b(-k - 1, m)), _a(-k - 2, m))))
    return out


def _lem2_ii(m, kmax=5):
    out = []
    for k in range(1, kmax + 1):
        out.append((f"H[a_{{-{k}}}] = b_{{-{k}}}", (-k,), lambda k=k: (hilbert(_a(-k, m)), _b(-k, m))))
        out.append((f"H[b_{{-{k}}}] = a_{{-{k}}}", (-k,), lambda k=k: (hilbert(_b(-k, m)), _a(-k, m))))
    return out


def _lem2_iii(m, kmax=5):
    out = []
    for j in range(1, kmax + 1):
        for k in range(1, kmax + 1):
            r = -j - k + 1
            idx = (-j, -k, r)
            out.append((f"a_{{-{j}}} * a_{{-{k}}} = a_{{{r}}}", idx,
                        lambda j=j, k=k, r=r: (convolve(_a(-j, m), _a(-k, m)), _a(r, m))))
            out.append((f"a_{{-{j}}} * b_{{-{k}}} = b_{{{r}}}", idx,
                        lambda j=j, k=k, r=r: (convolve(_a(-j, m), _b(-k, m)), _b(r, m))))
            out.append((f"b_{{-{j}}} * a_{{-{k}}} = b_{{{r}}}", idx,
                        lambda j=j, k=k, r=r: (convolve(_b(-j, m), _a(-k, m)), _b(r, m))))
            out.append((f"b_{{-{j}}} * b_{{-{k}}} = a_{{{r}}}", idx,
                        lambda j=j, k=k, r=r: (convolve(_b(-j, m), _b(-k, m)), _a(r, m))))
    return out


def _lemintiem(m, part):
    table = {
        "i": [("-dx a_0 = b_{-1} = H", (0, -1),
               lambda: (_ndx(_a(0, m)), _b(-1, m))),
              ("b_{-1} = H", (-1,), lambda: (_b(-1, m), hilbert_kernel(m)))],
        "ii": [("-dx b_0 = a_{-1} = delta", (0, -1),
                lambda: (_ndx(_b(0, m)), _a(-1, m))),
               ("a_{-1} = delta", (-1,), lambda: (_a(-1, m), delta(m)))],
        "iii": [("H[a_0] = b_0", (0,), lambda: (hilbert(_a(0, m)), _b(0, m)))],
        "iv": [("H[b_0] = a_0", (0,), lambda: (hilbert(_b(0, m)), _a(0, m)))],
        "v": [("c_{-1} * a_0 = c_0", (-1, 0), lambda: (_c(-1, m).convolve(_pv(_a(0, m))), _c(0, m))),
              ("c_{-1} * e0bar b_0 = c_0", (-1, 0), lambda: (_c(-1, m).convolve(_e0b(_b(0, m))), _c(0, m))),
              ("c_{-1} * c_0 = c_0", (-1, 0), lambda: (_c(-1, m).convolve(_c(0, m)), _c(0, m)))],
        "vi": [("-e0bar dx c_0 = c_{-1}", (0, -1), lambda: (_minus_e0bar_dirac(_c(0, m)), _c(-1, m)))],
        "vii": [("e0bar H[c_0] = c_0", (0,), lambda: (_e0bar_hilbert(_c(0, m)), _c(0, m)))],
    }
    return table[part]


def _lem54(m, part):
    table = {
        "i": [("-dx a_1 = b_0", (1, 0), lambda: (_ndx(_a(1, m)), _b(0, m))),
              ("-dx b_1 = a_0", (1, 0), lambda: (_ndx(_b(1, m)), _a(0, m))),
              ("-e0bar dx c_1 = c_0", (1, 0), lambda: (_minus_e0bar_dirac(_c(1, m)), _c(0, m)))],
        "ii": [("H[a_1] = b_1", (1,), lambda: (hilbert(_a(1, m)), _b(1, m))),
               ("H[b_1] = a_1", (1,), lambda: (hilbert(_b(1, m)), _a(1, m))),
               ("e0bar H[c_1] = c_1", (1,), lambda: (_e0bar_hilbert(_c(1, m)), _c(1, m)))],
        "iii": [("c_{-1} * a_1 = c_1", (-1, 1), lambda: (_c(-1, m).convolve(_pv(_a(1, m))), _c(1, m))),
                ("c_{-1} * e0bar b_1 = c_1", (-1, 1), lambda: (_c(-1, m).convolve(_e0b(_b(1, m))), _c(1, m))),
                ("c_{-1} * c_1 = c_1", (-1, 1), lambda: (_c(-1, m).convolve(_c(1, m)), _c(1, m)))],
        "iv": [("a_0 * c_0 = c_1", (0, 1), lambda: (_pv(_a(0, m)).convolve(_c(0, m)), _c(1, m))),
               ("c_0 * a_0 = c_1", (0, 1), lambda: (_c(0, m).convolve(_pv(_a(0, m))), _c(1, m))),
               ("e0bar b_0 * c_0 = c_1", (0, 1), lambda: (_e0b(_b(0, m)).convolve(_c(0, m)), _c(1, m))),
               ("c_0 * e0bar b_0 = c_1", (0, 1), lambda: (_c(0, m).convolve(_e0b(_b(0, m))), _c(1, m)))],
    }
    return table[part]


def _lem56(m, part):
    table = {
        "i": [("-dx a_2 = b_1", (2, 1), lambda: (_ndx(_a(2, m)), _b(1, m))),
              ("-dx b_2 = a_1", (2, 1), lambda: (_ndx(_b(2, m)), _a(1, m))),
              ("-e0bar dx c_2 = c_1", (2, 1), lambda: (_minus_e0bar_dirac(_c(2, m)), _c(1, m)))],
        "ii": [("H[a_2] = b_2", (2,), lambda: (hilbert(_a(2, m)), _b(2, m))),
               ("H[b_2] = a_2", (2,), lambda: (hilbert(_b(2, m)), _a(2, m))),
               ("e0bar H[c_2] = c_2", (2,), lambda: (_e0bar_hilbert(_c(2, m)), _c(2, m)))],
        "iii": [("c_{-1} * a_2 = c_2", (-1, 2), lambda: (_c(-1, m).convolve(_pv(_a(2, m))), _c(2, m))),
                ("c_{-1} * e0bar b_2 = c_2", (-1, 2), lambda: (_c(-1, m).convolve(_e0b(_b(2, m))), _c(2, m))),
                ("c_{-1} * c_2 = c_2", (-1, 2), lambda: (_c(-1, m).convolve(_c(2, m)), _c(2, m)))],
        "iv": [("c_0 * a_1 = c_2", (0, 1, 2), lambda: (_c(0, m).convolve(_pv(_a(1, m))), _c(2, m))),
               ("a_1 * c_0 = c_2", (0, 1, 2), lambda: (_pv(_a(1, m)).convolve(_c(0, m)), _c(2, m))),
               ("c_0 * e0bar b_1 = c_2", (0, 1, 2), lambda: (_c(0, m).convolve(_e0b(_b(1, m))), _c(2, m))),
               ("e0bar b_1 * c_0 = c_2", (0, 1, 2), lambda: (_e0b(_b(1, m)).convolve(_c(0, m)), _c(2, m)))],
    }
    return table[part]


def _lem58(m, part, kmax=5):
    out = []
    for k in range(1, kmax + 1):
        if part == "i":
            out.append((f"-dx a_{k} = b_{k - 1}", (k, k - 1), lambda k=k: (_ndx(_a(k, m)), _b(k - 1, m))))
        elif part == "ii":
            out.append((f"-dx b_{k} = a_{k - 1}", (k, k - 1), lambda k=k: (_ndx(_b(k, m)), _a(k - 1, m))))
        elif part == "iii":
            out.append((f"H[a_{k}] = b_{k}", (k,), lambda k=k: (hilbert(_a(k, m)), _b(k, m))))
            out.append((f"b_{{-1}} * a_{k} = b_{k}", (-1, k), lambda k=k: (convolve(_b(-1, m), _a(k, m)), _b(k, m))))
        else:
            out.append((f"H[b_{k}] = a_{k}", (k,), lambda k=k: (hilbert(_b(k, m)), _a(k, m))))
            out.append((f"b_{{-1}} * b_{k} = a_{k}", (-1, k), lambda k=k: (convolve(_b(-1, m), _b(k, m)), _a(k, m))))
    return out


def _hh_delta(m):
    return [("H * H = delta", (-1,), lambda: (convolve(hilbert_kernel(m), hilbert_kernel(m)), delta(m)))]


def _hilbert_involution(m, nmin=-5, nmax=5):
    out = []
    for n in range(nmin, nmax + 1):
        out.append((f"H[H[a_{n}]] = a_{n}", (n,), lambda n=n: (hilbert(hilbert(_a(n, m))), _a(n, m))))
        out.append((f"H[H[b_{n}]] = b_{n}", (n,), lambda n=n: (hilbert(hilbert(_b(n, m))), _b(n, m))))
    return out


def _hilbert_pairing(m, nmin=-5, nmax=5):
    out = []
    for n in range(nmin, nmax + 1):
        out.append((f"H[a_{n}] = b_{n}", (n,), lambda n=n: (hilbert(_a(n, m)), _b(n, m))))
        out.append((f"H[b_{n}] = a_{n}", (n,), lambda n=n: (hilbert(_b(n, m)), _a(n, m))))
    return out


def _a0a0(m):
    return [("a_0 * a_0 = a_1", (0, 1), lambda: (convolve(_a(0, m), _a(0, m)), _a(1, m)))]


def _upstream_recursion(m, nmax=5):
    out = []
    for n in range(1, nmax + 1):
        for i in range(n):
            j = n - 1 - i
            idx = (i, j, n)
            out.append((f"a_{i} * a_{j} = a_{n}", idx, lambda i=i, j=j, n=n: (convolve(_a(i, m), _a(j, m)), _a(n, m))))
            out.append((f"b_{i} * b_{j} = a_{n}", idx, lambda i=i, j=j, n=n: (convolve(_b(i, m), _b(j, m)), _a(n, m))))
            out.append((f"a_{i} * b_{j} = b_{n}", idx, lambda i=i, j=j, n=n: (convolve(_a(i, m), _b(j, m)), _b(n, m))))
            out.append((f"b_{i} * a_{j} = b_{n}", idx, lambda i=i, j=j, n=n: (convolve(_b(i, m), _a(j, m)), _b(n, m))))
    return out


def _paravector_hilbert(m, nmin=-5, nmax=5):
    return [
        (f"e0bar H[c_{n}] = c_{n}", (n,), lambda n=n: (_e0bar_hilbert(_c(n, m)), _c(n, m)))
        for n in range(nmin, nmax + 1)
    ]


def _projection(m):
    return [
        (f"c_{{-1}} * c_{n} = c_{n}", (-1, n), lambda n=n: (_c(-1, m).convolve(_c(n, m)), _c(n, m)))
        for n in range(-2, 3)
    ]


def _ladder(m, depth=8):
    out = []
    for k in range(1, depth):
        out.append((f"-dx a_{{-{k}}} = b_{{-{k + 1}}}", (-k, -k - 1), lambda k=k: (_ndx(_a(-k, m)), _b(-k - 1, m))))
        out.append((f"-dx b_{{-{k}}} = a_{{-{k + 1}}}", (-k, -k - 1), lambda k=k: (_ndx(_b(-k, m)), _a(-k - 1, m))))
    return out


def _fundamental_solution(m):
    return [("dx (-b_0) = delta", (0,), lambda: (dirac_action(-_b(0, m)), delta(m)))]


def _half_laplacian(m):
    return [
        ("a_{-2} * a_0 = delta", (-2, 0), lambda: (convolve(_a(-2, m), _a(0, m)), delta(m))),
        ("a_0 * a_{-2} = delta", (-2, 0), lambda: (convolve(_a(0, m), _a(-2, m)), delta(m))),
    ]


_BUILDERS: dict[str, tuple[str, Callable]] = {
    "lem41-i": ("Dirac ladder from the Cauchy boundary pair", _lem41_i),
    "lem41-ii": ("Hilbert pairing at n = -2", _lem41_ii),
    "lem41-iii": ("analytic-signal projection at n = -2", _lem41_iii),
    "lem2-i": ("Dirac ladder downstream", _lem2_i),
    "lem2-ii": ("Hilbert pairing downstream", _lem2_ii),
    "lem2-iii": ("downstream convolution semigroup", _lem2_iii),
    "lemintiem-i": ("-dx a_0 = H", lambda m: _lemintiem(m, "i")),
    "lemintiem-ii": ("-dx b_0 = delta", lambda m: _lemintiem(m, "ii")),
    "lemintiem-iii": ("H[a_0] = b_0", lambda m: _lemintiem(m, "iii")),
    "lemintiem-iv": ("H[b_0] = a_0", lambda m: _lemintiem(m, "iv")),
    "lemintiem-v": ("projection onto c_0", lambda m: _lemintiem(m, "v")),
    "lemintiem-vi": ("-e0bar dx c_0 = c_{-1}", lambda m: _lemintiem(m, "vi")),
    "lemintiem-vii": ("e0bar H[c_0] = c_0", lambda m: _lemintiem(m, "vii")),
    "lem54-i": ("Dirac ladder at n = 1", lambda m: _lem54(m, "i")),
    "lem54-ii": ("Hilbert pairing at n = 1", lambda m: _lem54(m, "ii")),
    "lem54-iii": ("projection onto c_1", lambda m: _lem54(m, "iii")),
    "lem54-iv": ("c_1 from c_0", lambda m: _lem54(m, "iv")),
    "lem56-i": ("Dirac ladder at n = 2", lambda m: _lem56(m, "i")),
    "lem56-ii": ("Hilbert pairing at n = 2", lambda m: _lem56(m, "ii")),
    "lem56-iii": ("projection onto c_2", lambda m: _lem56(m, "iii")),
    "lem56-iv": ("c_2 from c_0 and c_1", lambda m: _lem56(m, "iv")),
    "lem58-i": ("-dx a_k = b_{k-1}", lambda m: _lem58(m, "i")),
    "lem58-ii": ("-dx b_k = a_{k-1}", lambda m: _lem58(m, "ii")),
    "lem58-iii": ("H[a_k] = b_k", lambda m: _lem58(m, "iii")),
    "lem58-iv": ("H[b_k] = a_k", lambda m: _lem58(m, "iv")),
    "hh-delta": ("H * H = delta", _hh_delta),
    "hilbert-involution": ("H o H = identity on the catalog", _hilbert_involution),
    "hilbert-pairing": ("H[a_n] = b_n and H[b_n] = a_n", _hilbert_pairing),
    "a0a0-a1": ("a_0 * a_0 = a_1", _a0a0),
    "upstream-recursion": ("upstream recurrences against closed forms", _upstream_recursion),
    "paravector-hilbert": ("e0bar H[c_n] = c_n", _paravector_hilbert),
    "projection": ("c_{-1} * c_n = c_n", _projection),
    "ladder": ("downstream ladder against closed forms", _ladder),
    "fundamental-solution": ("dx (-b_0) = delta", _fundamental_solution),
    "half-laplacian": ("a_{-2} * a_0 = delta", _half_laplacian),
}

LEMMA_IDS: tuple[str, ...] = tuple(_BUILDERS)


def describe(lemma_id: str) -> str:
    if lemma_id not in _BUILDERS:
        raise DomainError(f"unknown lemma id {lemma_id!r}")
    return _BUILDERS[lemma_id][0]


def _text(x) -> str:
    return x.to_text() if hasattr(x, "to_text") else str(x)


def verify_lemma(lemma_id: str, m: int, n: int | None = None) -> LemmaReport:
    """Verify every instance of one catalog entry in dimension ``m``.

    Parameters
    ----------
    lemma_id : str
        One of :data:`LEMMA_IDS`.
    m : int
        Boundary dimension.
    n : int, optional
        Keep only the instances that involve chain index ``n``.
    """
    if lemma_id not in _BUILDERS:
        raise DomainError(f"unknown lemma id {lemma_id!r}")
    report = LemmaReport(lemma_id, m)
    for label, indices, thunk in _BUILDERS[lemma_id][1](m):
        if n is not None and n not in indices:
            continue
        try:
            # every boundary value named by the instance must exist in this dimension
            for idx in indices:
                boundary_value(idx, m)
            lhs, rhs = thunk()
        except DimensionTooSmall as exc:
            report.instances.append(InstanceResult(label, indices, "SKIP", detail=str(exc)))
            continue
        except ChainError as exc:
            report.instances.append(
                InstanceResult(label, indices, "FAIL", detail=f"{type(exc).__name__}: {exc}")
            )
            continue
        status = "PASS" if lhs == rhs else "FAIL"
        report.instances.append(InstanceResult(label, indices, status, _text(lhs), _text(rhs)))
    return report


def verify_all(m: int, n: int | None = None) -> list[LemmaReport]:
    return [verify_lemma(lid, m, n) for lid in LEMMA_IDS]
