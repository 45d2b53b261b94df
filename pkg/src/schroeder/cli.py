"""Command line front end.

Every command prints one JSON document.  Exit codes: 0 success, 1 parse or
usage error, 2 domain rejection, 3 numerical failure.  Errors are reported
as ``{"error": <name>, "message": ..., "exit_code": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .checks import DEFAULT_TEST_FUNCTION, run_suites
from .config import DEFAULT_MAX_N, DEFAULT_ORDER, DEFAULT_TOLERANCES, Tolerances
from .context import SymbolContext
from .errors import DomainError, NotSchroeder, ParseError, SchroederError
from .koenigs import spiral, verify_eigen_relation
from .projections import apply_projection
from .serialization import parse_complex, parse_function, parse_symbol, to_jsonable
from .solver import OutputMode, resolve_at_eigenvalue, solve, verification_grid
from .spectral import (WeightedHardyParams, contour_verify, hardy_membership,
                       koenigs_for_hardy, spectrum_report)
from .symbol import DEFAULT_RADII, SymbolKind, compactness_probe


@dataclass(frozen=True)
class CliConfig:
    order: int = DEFAULT_ORDER
    max_n: int = DEFAULT_MAX_N
    tolerances: Tolerances = field(default_factory=lambda: DEFAULT_TOLERANCES)
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.order < 8:
            raise ParseError("--order must be at least 8")
        if not 0 <= self.max_n <= self.order / 2:
            raise ParseError("--max-n must lie in [0, order/2]")
        if self.format not in ("json", "pretty"):
            raise ParseError("--format must be json or pretty")


def parse_tolerances(items) -> Tolerances:
    changes = {}
    names = set(Tolerances.names())
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or name not in names:
            raise ParseError(f"bad --tol {item!r}; known names: {', '.join(sorted(names))}")
        try:
            changes[name] = float(value)
        except ValueError:
            raise ParseError(f"tolerance {name} needs a number, got {value!r}") from None
    return DEFAULT_TOLERANCES.replace(**changes)


def _read_json_arg(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {text[1:]}: {exc}") from None
    return text


def _lambda_arg(text: str) -> complex:
    parts = text.split(",")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ParseError(f"--lambda expects re[,im], got {text!r}") from None
    if len(vals) not in (1, 2):
        raise ParseError(f"--lambda expects re[,im], got {text!r}")
    return parse_complex(vals if len(vals) == 2 else vals[0])


def _context(args, cfg: CliConfig) -> SymbolContext:
    symbol = parse_symbol(_read_json_arg(args.symbol), cfg.tolerances)
    return SymbolContext(symbol, cfg.order, cfg.max_n, cfg.tolerances)


# ----------------------------------------------------------------- commands


def cmd_analyze(args, cfg):
    ctx = _context(args, cfg)
    return {"command": "analyze", "symbol": ctx.symbol.to_json(),
            "classification": ctx.classification.to_json()}


def cmd_koenigs(args, cfg):
    ctx = _context(args, cfg)
    kd = ctx.koenigs
    return {"command": "koenigs", "alpha": kd.alpha, "lambda1": kd.lambda1,
            "order": kd.order, "kappa": kd.kappa,
            "eigen_residual": verify_eigen_relation(kd, ctx.symbol, 1)}


def cmd_project(args, cfg):
    ctx = _context(args, cfg)
    f = parse_function(_read_json_arg(args.f)) if args.f else DEFAULT_TEST_FUNCTION
    pf = ctx.projections
    if not 0 <= args.n <= pf.max_n:
        raise DomainError(f"--n must lie in 0..{pf.max_n}")
    fs = f.taylor_at(ctx.alpha, ctx.order)
    return {"command": "project", "n": args.n,
            "functionals": [list(row) for row in pf.functionals[: args.n + 1]],
            "psi": pf.psi(args.n, fs), "projection": apply_projection(pf, args.n, fs)}


def cmd_solve(args, cfg):
    ctx = _context(args, cfg)
    g = parse_function(_read_json_arg(args.g))
    mode = OutputMode.SERIES if args.mode == "series" else OutputMode.POINTWISE
    if args.eigen_index is not None:
        lam = ctx.lambda1 ** args.eigen_index if ctx.kind is SymbolKind.SCHROEDER else None
        result = resolve_at_eigenvalue(ctx, args.eigen_index, g, mode)
    else:
        if args.lam is None:
            raise ParseError("solve needs --lambda or --eigen-index")
        lam = _lambda_arg(args.lam)
        result = solve(ctx, lam, g, mode)
    grid = verification_grid(ctx, g)
    values = result.evaluate(grid)
    return {"command": "solve", "lambda": lam, "mode": mode.value,
            "f_series": result.f_series,
            "grid": [{"z": z, "f": v} for z, v in zip(grid, values)],
            "diagnostics": result.diagnostics}


def cmd_spectrum(args, cfg):
    ctx = _context(args, cfg)
    report = spectrum_report(ctx, args.max_n_report)
    out = {"command": "spectrum", **report.to_json(), "contour_checks": []}
    if args.contour and ctx.kind is SymbolKind.SCHROEDER:
        z = ctx.alpha + 0.5 * ctx.eval_radius * spiral(5)
        for n in range(min(4, ctx.max_n) + 1):
            res = contour_verify(ctx, n, DEFAULT_TEST_FUNCTION, z)
            out["contour_checks"].append({"n": n, "radius": res["radius"], "error": res["error"],
                                          "pass": res["error"] <= cfg.tolerances.contour_tol})
    return out


def cmd_verify(args, cfg):
    ctx = _context(args, cfg)
    if ctx.kind is not SymbolKind.SCHROEDER:
        raise NotSchroeder(f"verification suites need a Schroeder symbol, got {ctx.kind.value}")
    rows = run_suites(ctx, args.suite)
    return {"command": "verify", "suite": args.suite, "checks": rows,
            "all_pass": all(r["pass"] for r in rows)}


def cmd_hardy(args, cfg):
    symbol = parse_symbol(_read_json_arg(args.symbol), cfg.tolerances)
    params = WeightedHardyParams(args.a, args.K)
    kd = koenigs_for_hardy(symbol, args.K, max(args.p, 1), cfg.tolerances)
    out = hardy_membership(kd, args.p, params, cfg.tolerances.growth_margin)
    return {"command": "hardy", **out}


def cmd_compactness(args, cfg):
    symbol = parse_symbol(_read_json_arg(args.symbol), cfg.tolerances)
    radii = DEFAULT_RADII if args.radii is None else tuple(args.radii)
    res = compactness_probe(symbol, radii, tol=cfg.tolerances)
    return {"command": "compactness", **res.to_json()}


# ------------------------------------------------------------------ parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="schroeder", description="Composition operators with rational symbols.")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="series truncation order")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="largest projection index")
    p.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a tolerance")
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.add_argument("--output", help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("symbol", help="symbol JSON, @file, or - for stdin")
        sp.set_defaults(func=func)
        return sp

    add("analyze", cmd_analyze, "classify a symbol")
    add("koenigs", cmd_koenigs, "Koenigs eigenfunction coefficients")
    sp = add("project", cmd_project, "spectral projection P_n f")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--f", help="function JSON (defaults to a fixed test function)")
    sp = add("solve", cmd_solve, "solve lambda f - f o phi = g")
    sp.add_argument("--lambda", dest="lam", help="re[,im]")
    sp.add_argument("--eigen-index", type=int, help="solve at lambda_n with P_n f = 0")
    sp.add_argument("--g", required=True, help="right-hand side JSON")
    sp.add_argument("--mode", choices=("series", "pointwise"), default="pointwise")
    sp = add("spectrum", cmd_spectrum, "spectrum report")
    sp.add_argument("--report-max-n", dest="max_n_report", type=int, default=None)
    sp.add_argument("--contour", action="store_true", help="include contour-integral checks")
    sp = add("verify", cmd_verify, "run verification suites")
    sp.add_argument("--suite", choices=("projections", "contour", "koenigs", "all"), default="all")
    sp = add("hardy", cmd_hardy, "weighted Hardy membership of kappa^p")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--K", type=int, default=4096)
    sp = add("compactness", cmd_compactness, "compactness probe")
    sp.add_argument("--radii", type=float, nargs="+")
    return p


def _dump(doc, fmt: str) -> str:
    doc = to_jsonable(doc)
    if fmt == "pretty":
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    return json.dumps(doc, separators=(",", ":"), allow_nan=False) + "\n"


def main(argv=None) -> int:
    fmt, output = "json", None
    try:
        args = build_parser().parse_args(argv)
        fmt, output = args.format, args.output
        cfg = CliConfig(args.order, args.max_n, parse_tolerances(args.tol), output, fmt)
        doc = args.func(args, cfg)
        code = 0
        if doc.get("command") == "verify" and not doc["all_pass"]:
            code = 3
    except SchroederError as exc:
        doc = {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
        details = getattr(exc, "diagnostics", None)
        if details:
            doc["diagnostics"] = details
        code = exc.exit_code
    text = _dump(doc, fmt)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
