"""Command-line interface: spectrum tables, validation suite, zeta grids.

Subcommands
===========

``spectrum``
    Emit the analytic eigenvalue table (columns ``m, n, lambda, value,
    multiplicity``, sorted by value).

``validate``
    Run the cross-validation suite — truncated-window spectrum checks,
    Hilbert–Schmidt closed-form checks, and the seminorm comparisons — and
    exit 0 only if every gated check passes (informational rows report the
    depth-drift figures).

``zeta``
    Evaluate the full-spectrum zeta on a real s-grid (columns ``re_s, im_s,
    re_zeta, im_zeta, tail_bound, n_roots_used, pole``); grid points at the
    real-axis pole are flagged, not fatal.

All commands accept ``--format json|csv`` and ``--out PATH`` (default: the
directory named by ``PADICLAB_OUTDIR``, else stdout).  Machine output goes to
stdout or the file only; diagnostics go to stderr.  Identical configuration
and seed produce byte-identical output.

Exit codes: 0 success; 1 configuration error; 2 numerical failure (bracket or
convergence); 3 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Any

import numpy as np

from . import __version__
from .field_model import FieldParams
from .operators import hs_double_sum, hs_norm_Dg_inverse, hs_total_partial
from .qspecial import BracketError, SeriesError
from .seminorms import check_norm_comparison, testfn_library
from .spectrum_zeta import (
    CutoffError,
    PoleError,
    full_spectrum,
    schatten_m_factor,
    validate_spectrum,
    zeta_DR,
)
from .tree import tree_window_r

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_VALIDATION = 3


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with the config error code."""

    def error(self, message: str) -> None:  # type: ignore[override]
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _build_parser() -> _Parser:
    parser = _Parser(prog="padiclab", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--p", type=int, required=True, help="residue characteristic (prime)")
        p.add_argument("--e", type=int, required=True, help="ramification index")
        p.add_argument("--f", type=int, required=True, help="residue degree")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", type=str, default=None, help="output file path")
        p.add_argument("--seed", type=int, default=0, help="recorded in output metadata")

    sp = sub.add_parser("spectrum", help="analytic eigenvalue table")
    add_common(sp)
    sp.add_argument("--m-max", type=int, default=3)
    sp.add_argument("--n-max", type=int, default=5)
    sp.add_argument("--root-tol", type=float, default=1e-10)

    va = sub.add_parser("validate", help="cross-validation suite")
    add_common(va)
    va.add_argument("--depth", type=int, default=10, help="window depth N")
    va.add_argument("--k", type=int, default=8, help="eigenvalues compared")
    va.add_argument("--tol", type=float, default=1e-6)
    va.add_argument("--seminorm-depth", type=int, default=8)
    va.add_argument("--no-drift", action="store_true", help="skip N+2 drift figures")
    va.add_argument("--inject-error", type=float, default=None, help=argparse.SUPPRESS)

    ze = sub.add_parser("zeta", help="zeta values on a real s-grid")
    add_common(ze)
    ze.add_argument("--s-min", type=float, default=1.0)
    ze.add_argument("--s-max", type=float, default=8.0)
    ze.add_argument("--s-step", type=float, default=1.0)
    ze.add_argument("--n-roots", type=int, default=25)
    return parser


def _make_params(args: argparse.Namespace) -> FieldParams:
    return FieldParams(p=args.p, e=args.e, f=args.f)


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def _format_float(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _emit(
    args: argparse.Namespace,
    command: str,
    results: list[dict[str, Any]],
    columns: list[str],
    tolerances: dict[str, float],
) -> None:
    payload = {
        "params": {"p": args.p, "e": args.e, "f": args.f},
        "command": command,
        "results": results,
        "meta": {"version": __version__, "seed": args.seed, "tolerances": tolerances},
    }
    if args.format == "json":
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in results:
            writer.writerow([_format_float(row.get(c)) for c in columns])
        text = buf.getvalue()
    out_path = args.out
    if out_path is None:
        outdir = os.environ.get("PADICLAB_OUTDIR")
        if outdir:
            ext = "json" if args.format == "json" else "csv"
            out_path = os.path.join(outdir, f"{command}.{ext}")
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {out_path}", file=sys.stderr)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_spectrum(args: argparse.Namespace) -> int:
    params = _make_params(args)
    table = full_spectrum(params, m_max=args.m_max, n_max=args.n_max, target_tol=args.root_tol)
    results = [
        {
            "m": row.m,
            "n": row.n,
            "lambda": row.lam,
            "value": row.value,
            "multiplicity": row.multiplicity,
        }
        for row in table.rows
    ]
    _emit(
        args,
        "spectrum",
        results,
        ["m", "n", "lambda", "value", "multiplicity"],
        {"root_residual": args.root_tol},
    )
    return EXIT_OK


def _check_row(
    name: str, passed: bool, measured: float | None, tolerance: float | None, detail: str = ""
) -> dict[str, Any]:
    return {
        "name": name,
        "passed": bool(passed),
        "measured": measured,
        "tolerance": tolerance,
        "detail": detail,
    }


def _validate_rows(args: argparse.Namespace, params: FieldParams) -> tuple[list[dict], bool]:
    rows: list[dict[str, Any]] = []
    ok = True

    report = validate_spectrum(
        params,
        N=args.depth,
        k=args.k,
        tol=args.tol,
        with_drift=not args.no_drift,
        inject_rel_error=args.inject_error,
    )
    for check in report.checks:
        rows.append(
            _check_row(
                f"spectrum:{check.name}", check.passed, check.measured, check.tolerance, check.detail
            )
        )
        ok = ok and check.passed
    if report.drift_refined is not None:
        rows.append(
            _check_row(
                "spectrum:drift-refined",
                True,
                report.drift_refined,
                None,
                f"informational: refined lowest eigenvalue, depth {args.depth} vs {args.depth + 2}",
            )
        )
    if report.drift_raw is not None:
        rows.append(
            _check_row(
                "spectrum:drift-raw",
                True,
                report.drift_raw,
                None,
                "informational: raw lowest eigenvalue drift",
            )
        )

    # Hilbert-Schmidt closed form vs direct double sum.
    hs_dev = max(
        abs(hs_norm_Dg_inverse(params, m) - hs_double_sum(params, m)) for m in range(11)
    )
    hs_ok = hs_dev < 1e-12
    rows.append(_check_row("hs:closed-vs-double-sum", hs_ok, hs_dev, 1e-12, "m <= 10"))
    ok = ok and hs_ok

    # Total HS partial sums: convergent or divergent by parameter regime.
    if params.ef < 2:
        limit = hs_norm_Dg_inverse(params, 0) * schatten_m_factor(params, 1.0)
        dev = abs(hs_total_partial(params, 60) - limit)
        conv_ok = dev < 1e-10
        rows.append(
            _check_row("hs:total-converges", conv_ok, dev, 1e-10, f"limit {limit:.17g}")
        )
        ok = ok and conv_ok
    else:
        incs = [
            hs_total_partial(params, m) - hs_total_partial(params, m - 1)
            for m in range(1, 11)
        ]
        div_ok = min(incs) > 0.1
        rows.append(
            _check_row(
                "hs:total-diverges",
                div_ok,
                min(incs),
                0.1,
                "tail increments stay bounded away from zero",
            )
        )
        ok = ok and div_ok

    # Seminorm comparisons on the function library.
    window = tree_window_r(params, args.seminorm_depth)
    for fn in testfn_library(params):
        rep = check_norm_comparison(window, fn)
        detail = (
            f"L1={rep.L1_depthN:.12g} bounds=[{rep.lower_constant * rep.L1_depthN:.12g},"
            f" {rep.upper_constant * rep.L1_depthN:.12g}] matrix={rep.commutator_norm_depthN:.12g}"
        )
        rows.append(
            _check_row(f"seminorm:{rep.function_id}", rep.passed, rep.LD_formula_depthN, None, detail)
        )
        ok = ok and rep.passed
    return rows, ok


def _cmd_validate(args: argparse.Namespace) -> int:
    params = _make_params(args)
    rows, ok = _validate_rows(args, params)
    _emit(
        args,
        "validate",
        rows,
        ["name", "passed", "measured", "tolerance", "detail"],
        {"eigenvalue_rel": args.tol, "hs_closed": 1e-12, "seminorm_match": 1e-8},
    )
    if not ok:
        print("validation failed:", file=sys.stderr)
        for row in rows:
            if not row["passed"]:
                print(f"  {row['name']}: measured {row['measured']}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _cmd_zeta(args: argparse.Namespace) -> int:
    params = _make_params(args)
    if args.s_step <= 0:
        print("error: --s-step must be positive", file=sys.stderr)
        return EXIT_CONFIG
    count = int(np.floor((args.s_max - args.s_min) / args.s_step + 1e-9)) + 1
    results = []
    for i in range(max(count, 0)):
        s = args.s_min + i * args.s_step
        try:
            z = zeta_DR(params, s, n_roots=args.n_roots, method="factor")
            results.append(
                {
                    "re_s": float(s),
                    "im_s": 0.0,
                    "re_zeta": z.value.real,
                    "im_zeta": z.value.imag,
                    "tail_bound": z.tail_bound,
                    "n_roots_used": z.n_roots_used,
                    "pole": False,
                }
            )
        except PoleError:
            results.append(
                {
                    "re_s": float(s),
                    "im_s": 0.0,
                    "re_zeta": None,
                    "im_zeta": None,
                    "tail_bound": None,
                    "n_roots_used": args.n_roots,
                    "pole": True,
                }
            )
    _emit(
        args,
        "zeta",
        results,
        ["re_s", "im_s", "re_zeta", "im_zeta", "tail_bound", "n_roots_used", "pole"],
        {},
    )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        params = _make_params(args)  # validates p prime, e/f >= 1
        del params
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "spectrum":
            return _cmd_spectrum(args)
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "zeta":
            return _cmd_zeta(args)
        print(f"error: unknown command {args.command}", file=sys.stderr)
        return EXIT_CONFIG
    except (BracketError, SeriesError, CutoffError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
