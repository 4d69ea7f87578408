"""Command-line front end.

Subcommands
-----------
eval
    Print ``A_n``, ``B_n`` and the blades of ``C_n`` at one point.
verify
    Run the exact lemma catalog and/or the numeric harness.
table
    Print numerator polynomial coefficients or boundary distributions.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 unsupported request.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .clifford import HalfSpacePoint
from .constants import SymbolicConstant
from .distributions import boundary_text, boundary_value
from .errors import ChainError, UnsupportedRequest
from .harness import (
    CSV_COLUMNS,
    ResidualReport,
    boundary_limit_study,
    check_chain_step,
    check_harmonic,
    check_homogeneity,
    check_monogenic,
    check_rotation,
    function_components,
    poisson_quadrature_check,
    reports_to_csv,
    sample_points,
)
from .kernels import MIN_DIMENSION, eval_C, eval_exact, eval_kernel, poly_P, poly_Q
from .lemmas import LemmaReport, verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated command-line options."""

    command: str
    m: int | None = None
    n: int | None = None
    nmin: int = -4
    nmax: int = 2
    point: tuple | None = None
    suite: str = "all"
    samples: int = 200
    seed: int = 0
    h: float = 1e-4
    tol: float | None = None
    poly: str | None = None
    k: int | None = None
    kmax: int | None = None
    symbolic_m: bool = False
    boundary: bool = False
    out: str | None = None
    fmt: str = "text"

    def validate(self):
        if self.m is not None and self.m < 2:
            raise UsageError(f"--m must be >= 2, got {self.m}")
        if self.command == "eval":
            if self.n is None or self.m is None or self.point is None:
                raise UsageError("eval needs --n, --m and --point")
            if len(self.point) != self.m + 1:
                raise UsageError(f"--point needs {self.m + 1} coordinates for m = {self.m}")
        elif self.command == "verify":
            if self.m is None:
                raise UsageError("verify needs --m")
            if self.nmin > self.nmax:
                raise UsageError("--nmin must not exceed --nmax")
            if self.samples < 1 or self.h <= 0:
                raise UsageError("--samples and --h must be positive")
        elif self.command == "table":
            if self.boundary == (self.poly is not None):
                raise UsageError("table needs exactly one of --poly or --boundary")
            if self.poly is not None:
                if self.k is None:
                    raise UsageError("--poly needs --k")
                if self.kmax is not None and self.kmax < self.k:
                    raise UsageError("--kmax must not be below --k")
                if not self.symbolic_m and self.m is None:
                    raise UsageError("--poly needs --m (an integer or 'symbolic')")
            elif self.n is None or self.m is None:
                raise UsageError("--boundary needs --n and --m")
        return self


def _coordinate(text: str):
    try:
        return Fraction(text) if "e" not in text.lower() else float(text)
    except ValueError:
        try:
            return float(text)
        except ValueError as exc:
            raise UsageError(f"bad coordinate {text!r}") from exc


def _m_value(text: str):
    return "symbolic" if text == "symbolic" else int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monogenic-chain",
        description="Monogenic potential chain in the upper half-space R^{m+1}_+.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate A_n, B_n and C_n at a point")
    ev.add_argument("--n", type=int, required=True, help="chain index (n <= 2)")
    ev.add_argument("--m", type=int, required=True, help="boundary dimension m >= 2")
    ev.add_argument("--point", required=True,
                    help="comma-separated x0,x1,...,xm; rationals like 1/2 stay exact")

    ve = sub.add_parser("verify", help="run verification suites")
    ve.add_argument("--suite", choices=("symbolic", "numeric", "all"), default="all")
    ve.add_argument("--m", type=int, required=True, help="boundary dimension")
    ve.add_argument("--n", type=int, help="restrict to chain index n")
    ve.add_argument("--nmin", type=int, default=-4, help="lowest index for numeric checks (default -4)")
    ve.add_argument("--nmax", type=int, default=2, help="highest index for numeric checks (default 2)")
    ve.add_argument("--samples", type=int, default=200, help="random points per check (default 200)")
    ve.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    ve.add_argument("--h", type=float, default=1e-4, help="difference step (default 1e-4)")
    ve.add_argument("--tol", type=float,
                    help="residual tolerance (default 1e-6, or MONOGENIC_CHAIN_TOL)")
    ve.add_argument("--out", help="write the report here instead of stdout")
    ve.add_argument("--format", dest="fmt", choices=("csv", "text"), default="csv")

    ta = sub.add_parser("table", help="polynomial and boundary-value tables")
    ta.add_argument("--poly", choices=("P", "Q"), help="numerator polynomial family")
    ta.add_argument("--k", type=int, help="polynomial index")
    ta.add_argument("--kmax", type=int, help="last index of a range starting at --k")
    ta.add_argument("--boundary", action="store_true", help="print a_n and b_n")
    ta.add_argument("--n", type=int, help="chain index for --boundary")
    ta.add_argument("--m", type=_m_value, help="integer m, or 'symbolic' for --poly")
    ta.add_argument("--out", help="write the table here instead of stdout")
    ta.add_argument("--format", dest="fmt", choices=("csv", "text"), default="text")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("n", "nmin", "nmax", "suite", "samples", "seed", "h", "tol",
                 "poly", "k", "kmax", "boundary", "out", "fmt"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    m = getattr(args, "m", None)
    if m == "symbolic":
        cfg.symbolic_m = True
    else:
        cfg.m = m
    if getattr(args, "point", None):
        cfg.point = tuple(_coordinate(s.strip()) for s in args.point.split(","))
    return cfg.validate()


# rendering ------------------------------------------------------------------------

def pretty_constant(c: SymbolicConstant) -> str:
    """Readable form such as ``1/(2*pi^2)`` or ``-3*pi^(1/2)/4``."""
    if c.q == 0:
        return "0"
    num, den = abs(c.q.numerator), c.q.denominator
    sign = "-" if c.q < 0 else ""

    def pi(p: int) -> str:
        p = abs(p)
        return "pi" if p == 2 else (f"pi^{p // 2}" if p % 2 == 0 else f"pi^({p}/2)")

    top = [str(num)] if num != 1 or c.p <= 0 else []
    bottom = [str(den)] if den != 1 else []
    if c.p > 0:
        top.append(pi(c.p))
    elif c.p < 0:
        bottom.append(pi(c.p))
    head = "*".join(top) or "1"
    if not bottom:
        return sign + head
    tail = bottom[0] if len(bottom) == 1 else "(" + "*".join(bottom) + ")"
    return f"{sign}{head}/{tail}"


def _blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i) for i in range(mask.bit_length()) if mask >> i & 1)


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# subcommands ----------------------------------------------------------------------

def cmd_eval(cfg: RunConfig) -> int:
    m, n = cfg.m, cfg.n
    p = HalfSpacePoint(cfg.point[0], cfg.point[1:])
    a, b = eval_kernel(n, m, p.as_float())
    exact_a, exact_b = None, None
    if p.is_exact():
        try:
            exact_a, exact_b = eval_exact(n, m, p)
        except UnsupportedRequest:
            pass

    def line(name: str, value: float, exact: SymbolicConstant | None) -> str:
        value = value + 0.0  # print -0.0 as 0
        if exact is None:
            return f"{name} = {value:.15g}"
        return f"{name} = {pretty_constant(exact)}  [{exact.to_text()}]  = {value:.15g}"

    lines = [f"n = {n}, m = {m}, point = ({', '.join(str(v) for v in cfg.point)})"]
    lines.append(line("A", a, exact_a))
    for j, bj in enumerate(b, start=1):
        lines.append(line(f"B_{j}", float(bj), exact_b[j - 1] if exact_b else None))
    lines.append("C = A/2 + e0bar B/2, blade-wise:")
    c = eval_C(n, m, p.as_float())
    for mask, value in sorted(c.coeffs.items()):
        ex = None
        if exact_a is not None:
            if mask == 0:
                ex = exact_a * Fraction(1, 2)
            else:
                j = mask.bit_length() - 1
                ex = exact_b[j - 1] * Fraction(-1, 2)
        lines.append("  " + line(_blade_name(mask), value, ex))
    _write("\n".join(lines) + "\n", None)
    return EXIT_OK


def _effective_m(n: int, m: int) -> int:
    if n < 0:
        return m
    return max(m, MIN_DIMENSION[(n, "A")], MIN_DIMENSION[(n, "B")])


def _numeric_reports(cfg: RunConfig) -> list[ResidualReport]:
    indices = [cfg.n] if cfg.n is not None else list(range(cfg.nmin, cfg.nmax + 1))
    reports: list[ResidualReport] = []
    for n in indices:
        if n >= 3:
            raise UnsupportedRequest("upstream closed form unavailable for n >= 3")
        m = _effective_m(n, cfg.m)
        sample = sample_points(m, cfg.samples, cfg.seed)
        reports.append(check_monogenic(n, m, sample, cfg.h, cfg.tol))
        reports.append(check_chain_step(n, m, sample, cfg.h, cfg.tol))
        reports.append(check_harmonic(n, m, sample[:30]))
        reports.append(check_homogeneity(n, m, sample[:20]))
        reports.append(check_rotation(n, m, sample[:20], cfg.seed))
        if -2 <= n <= 2 and function_components(n, m):
            reports.append(
                boundary_limit_study(n, m, [1.0] + [0.0] * (m - 1), components=function_components(n, m))
            )
    if cfg.n is None:
        reports.append(poisson_quadrature_check())
    return reports


def _symbolic_rows(reports: Sequence[LemmaReport]) -> list[list[str]]:
    rows = []
    for rep in reports:
        for inst in rep.instances:
            n = inst.indices[0] if len(inst.indices) == 1 else ""
            rows.append([f"{rep.lemma_id}:{inst.label}", str(n), str(rep.m), "", "", "", inst.status])
    return rows


def cmd_verify(cfg: RunConfig) -> int:
    rows: list[list[str]] = []
    failures: list[str] = []
    if cfg.suite in ("symbolic", "all"):
        lemma_reports = verify_all(cfg.m, cfg.n)
        rows += _symbolic_rows(lemma_reports)
        for rep in lemma_reports:
            failures += [f"{rep.lemma_id}:{i.label} {i.detail or i.lhs + ' != ' + i.rhs}"
                         for i in rep.instances if i.status == "FAIL"]
    if cfg.suite in ("numeric", "all"):
        numeric = _numeric_reports(cfg)
        body = reports_to_csv(numeric).splitlines()[1:]
        rows += [next(csv.reader([r])) for r in body]
        failures += [f"{r.test_id} (n={r.n}, m={r.m}) residual {r.residual:.3g} >= {r.tol:g}"
                     for r in numeric if not r.passed]
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        counts = {"PASS": 0, "FAIL": 0, "SKIP": 0}
        for r in rows:
            if r[-1] in counts:
                counts[r[-1]] += 1
        text = "".join(f"{r[-1]:4s} {r[0]}\n" for r in rows if r[-1])
        text += f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['SKIP']} skipped\n"
    _write(text, cfg.out)
    if failures:
        sys.stderr.write("failing checks:\n" + "".join(f"  {f}\n" for f in failures))
        return EXIT_FAIL
    return EXIT_OK


def _monomial(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("t" if a == 1 else f"t^{a}")
    if b:
        parts.append("u^2" if b == 1 else f"u^{2 * b}")
    return "*".join(parts) or "1"


def _coeff_text(c) -> str:
    if isinstance(c, sympy.Basic):
        return str(sympy.factor(c))
    return str(c)


def cmd_table(cfg: RunConfig) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if cfg.boundary:
        a, b = boundary_value(cfg.n, cfg.m)
        if cfg.fmt == "csv":
            writer.writerow(("n", "m", "a", "b"))
            writer.writerow((cfg.n, cfg.m, a.to_text(), b.to_text()))
        else:
            buf.write(boundary_text(cfg.n, cfg.m) + "\n")
    else:
        m = sympy.Symbol("m") if cfg.symbolic_m else cfg.m
        family = poly_P if cfg.poly == "P" else poly_Q
        last = cfg.kmax if cfg.kmax is not None else cfg.k
        if cfg.fmt == "csv":
            writer.writerow(("poly", "k", "m", "monomial", "coefficient"))
        for k in range(cfg.k, last + 1):
            terms = family(k, m).ordered()
            if cfg.fmt == "csv":
                for (a, b), c in terms:
                    writer.writerow((cfg.poly, k, "m" if cfg.symbolic_m else m, _monomial(a, b), _coeff_text(c)))
            else:
                monos = ", ".join(_monomial(a, b) for (a, b), _ in terms)
                coeffs = ", ".join(_coeff_text(c) for _, c in terms)
                buf.write(f"{cfg.poly}_{k} ({monos}): {coeffs}\n")
    _write(buf.getvalue(), cfg.out)
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "table": cmd_table}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except UnsupportedRequest as exc:
        sys.stderr.write(f"unsupported: {exc}\n")
        return EXIT_UNSUPPORTED
    except ChainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
