"""Command-line interface: ``eval``, ``check`` and ``norm`` subcommands.

Exit codes: 0 success, 1 usage error, 2 parse/evaluation/domain error,
3 ``check`` tolerance breach.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import __version__
from .engine import SeedVector, differentiate
from .errors import AlgebraError, ExprError, SeedError
from .expr import parse
from .jet import Jet
from .norms import norm_beta, norm_l1, norm_l2_star
from .oracles import FDConfig, finite_difference, relative_deviation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EVAL = 2
EXIT_CHECK = 3

MAX_CLI_ORDER = 32
FD_MAX_ORDER = 4
# finest finite-difference step per derivative order; round-off grows like u / h^i
FD_STEPS = {1: 1e-3, 2: 1e-3, 3: 1e-3, 4: 2e-2}
# beyond this order, extraction through a random seed loses most of its digits
WELL_CONDITIONED_ORDER = 6
ILL_CONDITIONED_THETA = 1e-3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse's default exit code 2 clashes with ours
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _csv_floats(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"non-finite value in {text!r}")
    return vals


def _order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"order must be an integer, got {text!r}")
    if not 1 <= n <= MAX_CLI_ORDER:
        raise argparse.ArgumentTypeError(f"order must lie in 1..{MAX_CLI_ORDER}, got {n}")
    return n


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a real number, got {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite real, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="jetad", description="Higher-order forward-mode derivatives over truncated polynomials.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--expr", required=True, help="expression in x, e.g. 'ln(x)*cos(1/x^2)'")
        sp.add_argument("--at", required=True, type=_finite, help="point of evaluation")
        sp.add_argument("--order", type=_order, default=3, help="highest derivative (1..32)")
        sp.add_argument("--seed", type=_csv_floats, default=None,
                        help="seed coefficients t1,...,tn (default 1,0,...,0)")
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")

    ev = sub.add_parser("eval", help="derivatives from one jet evaluation")
    common(ev)

    ck = sub.add_parser("check", help="cross-check against random seeds and finite differences")
    common(ck)
    ck.add_argument("--seeds", type=int, default=8, help="number of random seeds")
    ck.add_argument("--tol", type=_finite, default=1e-8, help="max relative seed-to-seed deviation")
    ck.add_argument("--fd-tol", type=_finite, default=1e-4,
                    help="max relative deviation from finite differences")
    ck.add_argument("--rng-seed", type=int, default=0, help="RNG seed for the random seeds")

    nm = sub.add_parser("norm", help="l1, l2* and beta norms of a jet")
    nm.add_argument("--coeffs", required=True, help="comma-separated coefficients a0,...,an")
    nm.add_argument("--beta", default="1", help="beta > 0 for the beta norm")
    nm.add_argument("--other", default=None, help="second jet for a submultiplicativity check")
    nm.add_argument("--format", choices=("table", "json", "csv"), default="table")
    return p


@dataclass
class RunReport:
    expr: str
    at: float
    order: int
    seed: list[float]
    value: float
    derivatives: list[float]
    diagnostics: list[str] = field(default_factory=list)
    check: dict | None = None

    def to_dict(self) -> dict:
        d = {
            "expr": self.expr,
            "at": self.at,
            "order": self.order,
            "seed": self.seed,
            "value": self.value,
            "derivatives": self.derivatives,
            "diagnostics": self.diagnostics,
        }
        if self.check is not None:
            d["check"] = self.check
        return d


def _resolve_seed(args) -> SeedVector:
    if args.seed is None:
        return SeedVector.default(args.order)
    if len(args.seed) != args.order:
        raise UsageError(f"--seed has {len(args.seed)} values but --order is {args.order}")
    return SeedVector(tuple(args.seed))


def _show_span(src: str, err: ExprError) -> str:
    if err.span is None:
        return ""
    start, end = err.span
    return f"\n  {src}\n  {' ' * start}{'^' * max(1, end - start)}"


def cmd_eval(args) -> RunReport:
    theta = _resolve_seed(args)
    expr = parse(args.expr)
    res = differentiate(expr, args.at, args.order, theta)
    report = RunReport(args.expr, args.at, args.order, list(theta.thetas), res.value, list(res.derivs))
    if abs(theta.thetas[0]) < ILL_CONDITIONED_THETA:
        report.diagnostics.append(
            f"conditioning: |t1| = {abs(theta.thetas[0]):g} < {ILL_CONDITIONED_THETA:g}; "
            f"extraction weights grow like |t1|^-k"
        )
    return report


def _random_seed(rng: np.random.Generator, order: int) -> SeedVector:
    # t_k = t1^k u_k keeps the mixing terms on the scale set by t1
    t1 = float(rng.choice((-1.0, 1.0)) * rng.uniform(0.5, 2.0))
    rest = rng.uniform(-1.0, 1.0, order - 1)
    return SeedVector((t1,) + tuple(float(t1**k * u) for k, u in enumerate(rest, 2)))


def cmd_check(args) -> RunReport:
    if args.seeds < 1:
        raise UsageError("--seeds must be at least 1")
    report = cmd_eval(args)
    expr = parse(args.expr)
    rng = np.random.default_rng(args.rng_seed)
    seeds = [_random_seed(rng, args.order) for _ in range(args.seeds)]
    runs = [differentiate(expr, args.at, args.order, s).derivs for s in seeds]
    if args.order > WELL_CONDITIONED_ORDER:
        report.diagnostics.append(
            f"random seeds above order {WELL_CONDITIONED_ORDER} are ill-conditioned; "
            f"seed deviations grow quickly with the order"
        )
    if len(runs) < 2:
        report.diagnostics.append("warning: only one random seed, seed-to-seed comparison is degenerate")
    seed_dev = [0.0] * args.order
    for r1, r2 in itertools.combinations(runs, 2):
        for k in range(args.order):
            seed_dev[k] = max(seed_dev[k], relative_deviation(r1[k], r2[k]))

    fd, fd_dev = [], []
    for k in range(1, min(args.order, FD_MAX_ORDER) + 1):
        est = finite_difference(expr, args.at, k, FDConfig(h=FD_STEPS[k]))
        fd.append(est)
        fd_dev.append(relative_deviation(report.derivatives[k - 1], est))
    if args.order > FD_MAX_ORDER:
        report.diagnostics.append(
            f"finite-difference oracle covers orders 1..{FD_MAX_ORDER} only"
        )

    max_seed = max(seed_dev)
    max_fd = max(fd_dev) if fd_dev else 0.0
    passed = max_seed <= args.tol and max_fd <= args.fd_tol
    report.check = {
        "seeds": [list(s.thetas) for s in seeds],
        "seed_deviation": seed_dev,
        "max_seed_deviation": max_seed,
        "tol": args.tol,
        "finite_difference": fd,
        "fd_deviation": fd_dev,
        "max_fd_deviation": max_fd,
        "fd_tol": args.fd_tol,
        "passed": passed,
    }
    return report


# -- rendering ---------------------------------------------------------------


def _fmt_list(vals: Sequence[float]) -> str:
    return ", ".join(repr(v) for v in vals)


def render_run(report: RunReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    chk = report.check
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if chk is None:
            w.writerow(["k", "derivative"])
            w.writerow([0, repr(report.value)])
            for k, d in enumerate(report.derivatives, 1):
                w.writerow([k, repr(d)])
        else:
            w.writerow(["k", "derivative", "seed_deviation", "finite_difference", "fd_deviation"])
            w.writerow([0, repr(report.value), "", "", ""])
            for k, d in enumerate(report.derivatives, 1):
                has_fd = k <= len(chk["finite_difference"])
                w.writerow([
                    k,
                    repr(d),
                    repr(chk["seed_deviation"][k - 1]),
                    repr(chk["finite_difference"][k - 1]) if has_fd else "",
                    repr(chk["fd_deviation"][k - 1]) if has_fd else "",
                ])
        return buf.getvalue()

    lines = [
        f"expr   {report.expr}",
        f"at     {report.at!r}",
        f"order  {report.order}",
        f"seed   {_fmt_list(report.seed)}",
        "",
        f"{'k':>3}  derivative",
        f"{0:>3}  {report.value!r}",
    ]
    lines += [f"{k:>3}  {d!r}" for k, d in enumerate(report.derivatives, 1)]
    if chk is not None:
        lines += [
            "",
            f"random seeds         {len(chk['seeds'])}",
            f"max seed deviation   {chk['max_seed_deviation']:.3e}  (tol {chk['tol']:g})",
            f"max fd deviation     {chk['max_fd_deviation']:.3e}  (tol {chk['fd_tol']:g})",
            f"result               {'PASS' if chk['passed'] else 'FAIL'}",
        ]
    lines += [f"note: {d}" for d in report.diagnostics]
    return "\n".join(lines) + "\n"


def _parse_jet(text: str, flag: str) -> Jet:
    try:
        vals = [float(t) for t in text.split(",")]
        return Jet(tuple(vals))
    except (ValueError, AlgebraError) as exc:
        raise AlgebraError(f"bad {flag} {text!r}: {exc}") from exc


def cmd_norm(args) -> dict:
    x = _parse_jet(args.coeffs, "--coeffs")
    try:
        beta = float(args.beta)
    except ValueError:
        raise AlgebraError(f"bad --beta {args.beta!r}")
    if not (beta > 0.0 and math.isfinite(beta)):
        raise AlgebraError(f"--beta must be a positive real, got {args.beta!r}")
    norms = {"l1": norm_l1, "l2_star": norm_l2_star, "beta": lambda j: norm_beta(j, beta)}
    out = {
        "coeffs": list(x.coeffs),
        "order": x.order,
        "beta": beta,
        "norms": {name: fn(x) for name, fn in norms.items()},
        "other": None,
        "submultiplicativity": None,
    }
    if args.other is not None:
        y = _parse_jet(args.other, "--other")
        if y.order != x.order:
            raise AlgebraError(f"--other has order {y.order} but --coeffs has order {x.order}")
        xy = x * y
        out["other"] = list(y.coeffs)
        out["submultiplicativity"] = {
            name: {
                "product_norm": fn(xy),
                "norm_product": fn(x) * fn(y),
                "pass": fn(xy) <= fn(x) * fn(y),
            }
            for name, fn in norms.items()
        }
    return out


def render_norm(rep: dict, fmt: str) -> str:
    sub = rep["submultiplicativity"]
    if fmt == "json":
        return json.dumps(rep, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["norm", "value", "product_norm", "norm_product", "result"])
        for name, v in rep["norms"].items():
            if sub is None:
                w.writerow([name, repr(v), "", "", ""])
            else:
                s = sub[name]
                w.writerow([name, repr(v), repr(s["product_norm"]), repr(s["norm_product"]),
                            "PASS" if s["pass"] else "FAIL"])
        return buf.getvalue()
    lines = [
        f"coeffs  {_fmt_list(rep['coeffs'])}",
        f"order   {rep['order']}",
        f"beta    {rep['beta']!r}",
        "",
    ]
    lines += [f"{name:<8} {v!r}" for name, v in rep["norms"].items()]
    if sub is not None:
        lines += ["", f"other   {_fmt_list(rep['other'])}", "", "|x*y| <= |x| |y|"]
        for name, s in sub.items():
            verdict = "PASS" if s["pass"] else "FAIL"
            lines.append(f"{name:<8} {s['product_norm']!r} <= {s['norm_product']!r}  {verdict}")
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "norm":
            print(render_norm(cmd_norm(args), args.format), end="")
            return EXIT_OK
        report = cmd_eval(args) if args.command == "eval" else cmd_check(args)
    except UsageError as exc:
        print(f"jetad {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExprError as exc:
        print(f"error: {exc}{_show_span(args.expr, exc)}", file=sys.stderr)
        return EXIT_EVAL
    except (SeedError, AlgebraError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL

    for d in report.diagnostics:
        if d.startswith(("warning", "conditioning")):
            print(d, file=sys.stderr)
    print(render_run(report, args.format), end="")
    if report.check is not None and not report.check["passed"]:
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
