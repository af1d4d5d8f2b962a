"""ndimscatter command line: eval, compare, series.

Exit codes: 0 ok, 1 deviation above --tolerance, 2 usage, 3 no convergence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import engine, quadrature, residue
from .exact import HalfInteger
from .integrands import Branch, RationalOscIntegrand
from .report import ComparisonReport, fmt, format_complex

EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, EXIT_NO_CONVERGENCE = 0, 1, 2, 3
CONFIG_ENV = "NDIM_SCATTER_CONFIG"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# problem description


class Problem:
    def __init__(self, args):
        self.scattering = bool(getattr(args, "scattering", False))
        self.branch = Branch.parse(args.branch)
        self.sigma = float(args.sigma)
        if not self.sigma > 0:
            raise UsageError("--sigma must be positive")
        if self.scattering:
            self.r, self.s, self.a = 1, HalfInteger(-2), 1.0
        else:
            self.r = int(args.r)
            self.s = HalfInteger.of(args.s)
            self.a = float(args.a)
        if self.r < 0:
            raise UsageError("--r must be non-negative")
        if self.a < 0:
            raise UsageError("--a must be non-negative")
        self.terms = getattr(args, "terms", None)

    def describe(self) -> str:
        if self.scattering:
            return f"x sin(x)/(x^2 - σ^2), σ={fmt(self.sigma)}"
        text = f"x^{self.r} (x^2 - σ^2)^{self.s}"
        if self.a:
            text += " exp(i a x)"
        return text + f", a={fmt(self.a)}, σ={fmt(self.sigma)}"

    def params(self) -> dict:
        return {"r": self.r, "s": str(self.s), "a": self.a, "sigma": self.sigma,
                "scattering": self.scattering}

    def rational(self) -> RationalOscIntegrand:
        if not self.s.integral() or int(self.s) >= 0:
            raise UsageError("residue and quadrature need a negative integer --s")
        return RationalOscIntegrand.from_powers(self.r, -int(self.s), self.sigma, self.a)


_OSC_FORMS = {
    0: {Branch.OUTGOING: "iπe^{iaσ}/σ", Branch.INCOMING: "-iπe^{-iaσ}/σ", Branch.PV: "-πsin(aσ)/σ"},
    1: {Branch.OUTGOING: "iπe^{iaσ}", Branch.INCOMING: "iπe^{-iaσ}", Branch.PV: "iπcos(aσ)"},
}
_SCATTERING_FORMS = {Branch.OUTGOING: "πe^{iσ}", Branch.INCOMING: "πe^{-iσ}", Branch.PV: "πcos(σ)"}


def run_ndim(p: Problem):
    if p.scattering:
        return engine.scattering_integral(p.sigma, p.branch), _SCATTERING_FORMS[p.branch]
    if p.a > 0:
        if int(p.s.twice_value) != -2 or p.r > 1:
            raise UsageError("with --a > 0 the ndim method covers --s -1 and --r 0 or 1")
        if p.terms is not None:
            if p.r != 0:
                raise UsageError("--terms applies to --r 0")
            value = engine.exponential_integral(p.a, p.sigma, p.branch, n_terms=int(p.terms))
            return value, f"moment series through order {int(p.terms)}"
        if p.r == 0:
            return engine.exponential_integral(p.a, p.sigma, p.branch), _OSC_FORMS[0][p.branch]
        return engine.x_exponential_integral(p.a, p.sigma, p.branch), _OSC_FORMS[1][p.branch]
    if p.terms is not None:
        raise UsageError("--terms needs --a > 0")
    if p.s.integral() and int(p.s) <= -1:
        value = engine.ndim_rs_ac(p.r, int(p.s), p.branch)
    else:
        value = engine.ndim_rs(p.r, p.s)
    return value.to_complex(p.sigma), value.format("σ")


def _divide_i(z: complex) -> complex:
    return complex(z.imag, -z.real)


def run_residue(p: Problem):
    f = p.rational()
    if not f.arc_vanishes():
        if f.osc_freq != 0:
            raise UsageError("integrand does not decay on the closing arc")
        value = residue.damped_value(f, p.branch)
    elif p.branch is Branch.PV:
        value = residue.principal_value(f)
    else:
        value = residue.shifted_value(f, p.branch)
    return _divide_i(value) if p.scattering else value


def run_quadrature(p: Problem, cfg: quadrature.QuadratureConfig):
    f = p.rational()
    if p.branch is Branch.PV:
        est = quadrature.pv_quadrature(f, cfg)
    else:
        est = quadrature.epsilon_shift_quadrature(f, p.branch, None, cfg)
    value = _divide_i(est.value) if p.scattering else est.value
    return value, est.error_estimate


# --------------------------------------------------------------------------
# configuration


def read_config_file(path: str) -> dict:
    items = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (t.strip() for t in line.split("=", 1))
            items[key] = value
    return items


def build_config(args) -> quadrature.QuadratureConfig:
    path = args.config or os.environ.get(CONFIG_ENV)
    items = {}
    if path:
        try:
            items = read_config_file(path)
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc.strerror}")
    for key in ("excision_radii", "truncation_radius", "segment_tolerance", "tail_periods"):
        value = getattr(args, key, None)
        if value is not None:
            items[key] = value
    try:
        return quadrature.QuadratureConfig.from_mapping(items)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad quadrature config: {exc}")


# --------------------------------------------------------------------------
# commands


def _timed(func, *args):
    t0 = time.perf_counter()
    out = func(*args)
    return out, 1e3 * (time.perf_counter() - t0)


def cmd_eval(args) -> ComparisonReport:
    p = Problem(args)
    cfg = build_config(args)
    report = ComparisonReport(p.describe(), p.branch.value, p.params())
    if args.method == "ndim":
        (value, exact), ms = _timed(run_ndim, p)
        report.ndim_value, report.ndim_exact = value, exact
        report.wall_times["ndim"] = ms
    elif args.method == "residue":
        report.residue_value, report.wall_times["residue"] = _timed(run_residue, p)
    else:
        (value, err), ms = _timed(run_quadrature, p, cfg)
        report.quadrature_value, report.quadrature_error = value, err
        report.wall_times["quadrature"] = ms
    return report


def cmd_compare(args) -> ComparisonReport:
    p = Problem(args)
    cfg = build_config(args)
    jobs = {"ndim": (run_ndim, p), "residue": (run_residue, p), "quadrature": (run_quadrature, p, cfg)}
    if args.parallel:
        with ThreadPoolExecutor(max_workers=3) as pool:
            futures = {k: pool.submit(_timed, *job) for k, job in jobs.items()}
            results = {k: fut.result() for k, fut in futures.items()}
    else:
        results = {k: _timed(*job) for k, job in jobs.items()}
    (nd_value, exact), nd_ms = results["ndim"]
    rs_value, rs_ms = results["residue"]
    (qd_value, qd_err), qd_ms = results["quadrature"]
    return ComparisonReport(
        p.describe(), p.branch.value, p.params(),
        ndim_value=nd_value, ndim_exact=exact,
        residue_value=rs_value,
        quadrature_value=qd_value, quadrature_error=qd_err,
        wall_times={"ndim": nd_ms, "residue": rs_ms, "quadrature": qd_ms},
    )


def cmd_series(args) -> list:
    a, sigma = float(args.a), float(args.sigma)
    if not (a > 0 and sigma > 0):
        raise UsageError("series needs --a > 0 and --sigma > 0")
    if args.max_terms < 0:
        raise UsageError("--max-terms must be >= 0")
    branch = Branch.parse(args.branch)
    closed = engine.exponential_integral(a, sigma, branch)
    rows = []
    total = 0j
    for n, term in enumerate(engine.exponential_series_terms(a, sigma, branch, args.max_terms)):
        total += term
        rows.append({"N": n, "value": total, "error": abs(total - closed)})
    return rows


def render_eval(report: ComparisonReport, fmt_name: str) -> str:
    if fmt_name != "text":
        return report.render(fmt_name)
    row = report.rows()[0]
    line = format_complex(complex(float(row["value_re"]), float(row["value_im"])))
    if row["error_estimate"]:
        line += f" (±{row['error_estimate']})"
    if row["exact"]:
        line += f" ({row['exact']})"
    return line


def render_series(rows, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps([{"N": r["N"], "value": {"re": float(fmt(r["value"].real)),
                                                   "im": float(fmt(r["value"].imag))},
                            "error": float(fmt(r["error"]))} for r in rows], indent=2)
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "value_re", "value_im", "error"])
        for r in rows:
            w.writerow([r["N"], fmt(r["value"].real), fmt(r["value"].imag), fmt(r["error"])])
        return buf.getvalue().rstrip("\n")
    lines = [f"{'N':>3}  {'value':<48}  error"]
    for r in rows:
        lines.append(f"{r['N']:>3}  {format_complex(r['value']):<48}  {fmt(r['error'])}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# argument parsing


def _add_problem_flags(p):
    p.add_argument("--r", type=int, default=0, help="power of x (default 0)")
    p.add_argument("--s", default="-1", help="power of (x^2 - sigma^2); integer or half-integer")
    p.add_argument("--a", type=float, default=0.0, help="frequency of exp(iax) (default 0)")
    p.add_argument("--sigma", type=float, default=1.0, help="pole location (default 1)")
    p.add_argument("--branch", choices=[b.value for b in Branch], default="outgoing")
    p.add_argument("--scattering", action="store_true",
                   help="the integral of x sin x/(x^2 - sigma^2); ignores --r/--s/--a")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")


def _add_config_flags(p):
    p.add_argument("--config", help=f"key=value quadrature config (fallback ${CONFIG_ENV})")
    p.add_argument("--excision-radii", dest="excision_radii",
                   help="comma separated, strictly descending")
    p.add_argument("--truncation-radius", dest="truncation_radius", type=float)
    p.add_argument("--segment-tolerance", dest="segment_tolerance", type=float)
    p.add_argument("--tail-periods", dest="tail_periods", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ndimscatter", description="Evaluate and cross-check improper scattering integrals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate with a single method")
    ev.add_argument("--method", choices=["ndim", "residue", "quad"], default="ndim")
    ev.add_argument("--terms", type=int, help="partial sum of the moment series (ndim, r=0, a>0)")
    _add_problem_flags(ev)
    _add_config_flags(ev)

    cmp_ = sub.add_parser("compare", help="run all three methods and report deviations")
    cmp_.add_argument("--tolerance", type=float, default=1e-6)
    cmp_.add_argument("--parallel", action="store_true", help="run the methods concurrently")
    _add_problem_flags(cmp_)
    _add_config_flags(cmp_)

    ser = sub.add_parser("series", help="partial sums of the moment series for exp(iax)/(x^2 - sigma^2)")
    ser.add_argument("--a", type=float, default=1.0)
    ser.add_argument("--sigma", type=float, default=1.0)
    ser.add_argument("--branch", choices=[b.value for b in Branch], default="outgoing")
    ser.add_argument("--max-terms", dest="max_terms", type=int, default=20)
    ser.add_argument("--format", choices=["text", "json", "csv"], default="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            print(render_eval(cmd_eval(args), args.format))
            return EXIT_OK
        if args.command == "compare":
            report = cmd_compare(args)
            print(report.render(args.format))
            if not report.max_pairwise_deviation <= args.tolerance:
                print(f"deviation {fmt(report.max_pairwise_deviation)} exceeds tolerance "
                      f"{fmt(args.tolerance)}", file=sys.stderr)
                return EXIT_TOLERANCE
            return EXIT_OK
        print(render_series(cmd_series(args), args.format))
        return EXIT_OK
    except quadrature.NoConvergence as exc:
        print(f"ndimscatter: no convergence: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (UsageError, ValueError, ArithmeticError, NotImplementedError) as exc:
        print(f"ndimscatter: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
