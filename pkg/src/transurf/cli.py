"""Command-line front end: analyze, verify-proof, realize, fixtures.

Exit codes: 0 success, 1 verification mismatch, 2 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .exprlang import ExprError, parse
from .geomcore import (
    FixtureError,
    GeomError,
    SurfacePatch,
    dump_curve_json,
    fixture,
    fixture_json,
    form_grid,
    gauss_curvature_forms,
    load_curve,
)
from .realizer import RealizabilityInput, RealizerError, realizability_check, surface_report

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2
GRID_COLUMNS = ("u", "v", "phi", "L", "N", "K")


class InputError(Exception):
    pass


def _clean(x):
    """JSON-safe copy: non-finite floats become null, numpy scalars become Python numbers."""
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _json(obj) -> str:
    return json.dumps(_clean(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _grid(text: str) -> tuple[int, int]:
    try:
        nu, nv = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 64x64, got {text!r}") from None
    if nu < 2 or nv < 2:
        raise argparse.ArgumentTypeError("grid dimensions must be at least 2x2")
    return nu, nv


def _positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def _write(out: str | None, name: str, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    (path / name).write_text(text)


def _load(source: str):
    if source.startswith("fixture:"):
        return fixture(source[len("fixture:"):])
    if not Path(source).is_file():
        raise InputError(f"no such curve file: {source}")
    return load_curve(source)


# -- commands --------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    alpha, beta = _load(args.alpha), _load(args.beta)
    S = SurfacePatch.from_curves(alpha, beta, args.tol)
    report = surface_report(S, args.grid, h=args.h)
    us, vs = S.grid(*args.grid)
    fc = form_grid(S, us, vs)
    K = gauss_curvature_forms(fc)
    irregular = np.argwhere(~fc.regular)
    report["irregular"] = [[float(us[i]), float(vs[j])] for i, j in irregular[:20]]

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GRID_COLUMNS)
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            w.writerow([repr(float(x)) for x in (u, v, fc.phi[i, j], fc.L[i, j], fc.N[i, j], K[i, j])])
    if args.out is not None:
        _write(args.out, "report.json", _json(report))
        _write(args.out, "grid.csv", buf.getvalue())
    else:
        _write(None, "", buf.getvalue() if args.format == "csv" else _json(report))
    return EXIT_OK


def cmd_verify_proof(args) -> int:
    from .proofpipe import run_general_case, run_planar_case

    ledger = run_general_case() if args.case == "general" else run_planar_case()
    if args.out is not None:
        _write(args.out, "ledger.csv", ledger.to_csv())
        _write(args.out, "summary.json", ledger.to_json())
    else:
        _write(None, "", ledger.to_csv() if args.format == "csv" else ledger.to_json())
    for line in ledger.conclusion:
        print(f"conclusion: {line}", file=sys.stderr)
    bad = ledger.first_mismatch()
    if bad is not None:
        print(f"first mismatch: {bad.name}: {bad.note}", file=sys.stderr)
        return EXIT_MISMATCH
    if not ledger.proven:
        print("final contradiction not derived", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_realize(args) -> int:
    try:
        phi = parse(args.phi, ("u", "v"))
        A = parse(args.A, ("u",))
        B = parse(args.B, ("v",))
    except ExprError as exc:
        raise InputError(f"cannot parse expression: {exc}") from None
    try:
        u0, u1, v0, v1 = (float(x) for x in args.domain.split(","))
    except ValueError:
        raise InputError("domain must be u0,u1,v0,v1") from None
    if not (u0 < u1 and v0 < v1):
        raise InputError("domain bounds must be increasing")
    inp = RealizabilityInput(phi, A, B, args.K, args.eps1, args.eps2)
    report = realizability_check(inp, args.grid, ((u0, u1), (v0, v1)), tol=args.tol)
    body = report.to_dict()
    body["input"] = {"phi": args.phi, "A": args.A, "B": args.B, "K": args.K, "eps1": args.eps1, "eps2": args.eps2,
                     "grid": list(args.grid), "domain": [u0, u1, v0, v1]}
    _write(args.out, "realize.json", _json(body))
    if not report.applicable:
        print(report.message, file=sys.stderr)
        return EXIT_OK
    return EXIT_OK if report.realizable else EXIT_MISMATCH


def cmd_fixtures(args) -> int:
    name = args.name if not args.params else f"{args.name}({args.params})"
    text = dump_curve_json(fixture_json(name))
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="transurf", description="Translation surfaces: geometry checks and proof replay.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", default=None, help="output directory (file for 'fixtures'); stdout if omitted")
        sp.add_argument("--grid", type=_grid, default=(64, 64), help="sample grid NxM (default 64x64)")
        sp.add_argument("--tol", type=_positive, default=1e-6, help="tolerance (default 1e-6)")
        sp.add_argument("--format", choices=("json", "csv"), default="json", help="stdout format when --out is omitted")

    a = sub.add_parser("analyze", help="form coefficients, curvature and cylindricity of alpha(u) + beta(v)")
    a.add_argument("alpha", help="curve JSON path or fixture:NAME")
    a.add_argument("beta", help="curve JSON path or fixture:NAME")
    a.add_argument("--h", type=_positive, default=1e-4, help="central-difference step for Codazzi residuals")
    common(a)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-proof", help="exact replay of the elimination with a coefficient ledger")
    v.add_argument("case", choices=("general", "planar"))
    common(v)
    v.set_defaults(func=cmd_verify_proof)

    r = sub.add_parser("realize", help="realizability residuals for a candidate translation metric")
    r.add_argument("--phi", required=True, help="angle phi(u, v)")
    r.add_argument("--A", required=True, help="A(u)")
    r.add_argument("--B", required=True, help="B(v)")
    r.add_argument("--K", type=float, required=True, help="constant Gaussian curvature")
    r.add_argument("--eps1", type=int, choices=(-1, 1), default=None)
    r.add_argument("--eps2", type=int, choices=(-1, 1), default=None)
    r.add_argument("--domain", default="0,1,0,1", help="u0,u1,v0,v1 (default 0,1,0,1)")
    common(r)
    r.set_defaults(func=cmd_realize)

    f = sub.add_parser("fixtures", help="emit a named curve fixture as JSON")
    f.add_argument("name", help="line, circle, helix, fourier, scherk-slice; parameters may be inline, e.g. circle(2)")
    f.add_argument("params", nargs="?", default=None, help="comma-separated parameters, e.g. 1,1")
    f.add_argument("--out", default=None, help="output file; stdout if omitted")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command == "realize":
        sign = 1 if args.K >= 0 else -1
        args.eps1 = 1 if args.eps1 is None else args.eps1
        args.eps2 = args.eps1 * sign if args.eps2 is None else args.eps2
    try:
        return args.func(args)
    except (InputError, FixtureError, RealizerError, GeomError, ExprError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
