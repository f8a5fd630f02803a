"""Command line front end.

Subcommands: validate, modulus, geometry, export-mesh. Exit codes: 0 success,
1 mathematical failure (validation or tolerance), 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import curves as curves_mod
from . import modulus as modulus_mod
from . import surface as surface_mod
from .profiles import ValidationError, catalog, parse_profile, validate

SURFACE_ALIASES = {
    "koranyi": "koranyi_sphere",
    "bubble": "bubble_set",
    "cc": "cc_sphere",
}

DEFAULT_TOL = 1e-8
DEFAULT_CURVES = 200
DEFAULT_RESOLUTION = 1024
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _resolve_profile(args):
    """(ProfileCurve, display name) from --surface/--R or --profile."""
    if args.profile is not None:
        if args.surface is not None:
            raise UsageError("--surface and --profile are mutually exclusive")
        try:
            with open(args.profile) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read profile file: {exc}")
        return parse_profile(text, name=args.profile), args.profile
    name = args.surface or "koranyi"
    if name not in SURFACE_ALIASES:
        raise UsageError(f"unknown surface {name!r}; choose from "
                         f"{sorted(SURFACE_ALIASES)}")
    full = SURFACE_ALIASES[name]
    return catalog(full, R=args.R), name


def _header(args, out=None):
    out = out if out is not None else sys.stdout
    curves = getattr(args, "curves", None)
    print(f"# tol={args.tol:g} seed={args.seed} "
          f"curves={curves if curves is not None else DEFAULT_CURVES} "
          f"resolution={args.resolution}", file=out)


def _print_table(rows, out=None):
    out = out if out is not None else sys.stdout
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}}  {v}", file=out)


def cmd_validate(args) -> int:
    curve, name = _resolve_profile(args)
    report = validate(curve, grid_n=args.grid)
    rows = [("surface", name)]
    for label, chk in (("A1 (f > 0, f -> 0 at ends)", report.a1),
                       ("A2 (g decreasing, sign change)", report.a2),
                       ("beta strictly increasing", report.beta_monotone)):
        status = "pass" if chk.passed else f"FAIL at s={chk.witness:.6g} ({chk.detail})"
        rows.append((label, status))
    rows += [("min f", f"{report.min_f:.6g}"),
             ("min -g'", f"{report.min_neg_gdot:.6g}"),
             ("min beta'", f"{report.min_beta_dot:.6g}")]
    if args.json:
        _header(args, out=sys.stderr)
        payload = {
            "surface": name,
            "passed": report.passed,
            "a1": report.a1.passed,
            "a2": report.a2.passed,
            "beta_monotone": report.beta_monotone.passed,
            "min_f": report.min_f,
            "min_neg_gdot": report.min_neg_gdot,
            "min_beta_dot": report.min_beta_dot,
        }
        print(json.dumps(payload))
    else:
        _header(args)
        _print_table(rows)
    return 0 if report.passed else 1


def cmd_modulus(args) -> int:
    if not (args.a > 0 and args.a < args.b):
        raise UsageError(f"need 0 < a < b, got a={args.a}, b={args.b}")
    curve, name = _resolve_profile(args)
    ring = modulus_mod.make_ring(curve, args.a, args.b, grid_n=args.grid)
    report = modulus_mod.modulus_report(
        ring, name,
        curve_count=args.curves if args.curves is not None else 0,
        seed=args.seed,
        oracle_bins=64 if args.oracle else 0,
        tol=min(args.tol, 1e-9),
    )
    if args.json:
        _header(args, out=sys.stderr)
        print(json.dumps(report))
    else:
        _header(args)
        rows = [("surface", name), ("a", f"{args.a:g}"), ("b", f"{args.b:g}"),
                ("analytic", f"{report['analytic']:.12g}"),
                ("numeric", f"{report['numeric']:.12g}"),
                ("rel_err", f"{report['rel_err']:.3e}")]
        if "admissibility" in report:
            adm = report["admissibility"]
            rows += [("admissibility n", str(adm["n"])),
                     ("admissibility min", f"{adm['min']:.9f}"),
                     ("admissibility mean", f"{adm['mean']:.9f}")]
        if "oracle" in report:
            rows += [("oracle value", f"{report['oracle']['value']:.12g}"),
                     ("oracle max dev from uniform",
                      f"{report['oracle']['max_dev_from_uniform']:.3e}")]
        _print_table(rows)
    return 0 if report["rel_err"] <= max(args.tol, 1e-8) else 1


def cmd_geometry(args) -> int:
    curve, name = _resolve_profile(args)
    patch = surface_mod.SurfacePatch(curve, scale=args.scale)
    area = surface_mod.horizontal_area(patch)
    lo, hi = curve.domain
    n = args.resolution
    s_vals = lo + (hi - lo) * np.arange(1, n + 1) / (n + 1)
    csv_path = args.csv or f"{name.replace('/', '_')}_geometry.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s", "f", "g", "Nh_norm", "Hh"])
        for s in s_vals:
            f, _, _, g, _, _ = curve.eval(float(s))
            n1, n2 = surface_mod.horizontal_normal_components(patch, float(s), 0.0)
            try:
                hh = f"{surface_mod.mean_curvature(patch, float(s)):.17g}"
            except (surface_mod.CurvatureError, ArithmeticError):
                hh = "nan"
            writer.writerow([f"{s:.17g}", f"{f:.17g}", f"{g:.17g}",
                             f"{float(np.hypot(n1, n2)):.17g}", hh])
    _header(args)
    rows = [("surface", name), ("horizontal area", f"{area:.12g}"),
            ("geometry csv", csv_path)]
    if args.flow is not None:
        try:
            s0_str, phi0_str = args.flow.split(",")
            s0, phi0 = float(s0_str), float(phi0_str)
        except ValueError:
            raise UsageError(f"--flow expects 's0,phi0', got {args.flow!r}")
        span_lo = lo + 1e-3 * (hi - lo)
        span_hi = hi - 1e-3 * (hi - lo)
        flow = surface_mod.flow_curve(patch, s0, phi0, (span_lo, span_hi),
                                      n=args.resolution)
        flow_path = csv_path.rsplit(".", 1)[0] + "_flow.csv"
        flow.export_csv(flow_path)
        rows += [("flow csv", flow_path), ("flow residual", f"{flow.residual:.3e}")]
    _print_table(rows)
    return 0


def cmd_export_mesh(args) -> int:
    curve, name = _resolve_profile(args)
    patch = surface_mod.SurfacePatch(curve, scale=args.scale)
    out = args.out or f"{name.replace('/', '_')}.obj"
    obj_path, csv_path = surface_mod.export_mesh(patch, out, args.csv,
                                                 n_s=args.ns, n_phi=args.nphi)
    _header(args)
    _print_table([("surface", name), ("obj", obj_path), ("csv", csv_path),
                  ("vertices", str(args.ns * args.nphi))])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heisring",
        description="Horizontal geometry of revolution surfaces in the "
                    "Heisenberg group",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--surface", choices=sorted(SURFACE_ALIASES))
        p.add_argument("--R", type=float, default=1.0)
        p.add_argument("--profile", metavar="PATH")
        p.add_argument("--grid", type=int, default=4096)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
        p.add_argument("--json", action="store_true")
        p.add_argument("--csv", metavar="PATH")
        p.add_argument("--scale", type=float, default=1.0)

    p = sub.add_parser("validate", help="check profile admissibility conditions")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("modulus", help="analytic vs numeric ring modulus")
    add_common(p)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--curves", type=int, metavar="N",
                   help="run the random-family admissibility check on N curves")
    p.add_argument("--oracle", action="store_true",
                   help="also run the restricted optimization oracle")
    p.set_defaults(func=cmd_modulus)

    p = sub.add_parser("geometry", help="area, normals, curvature, flow curves")
    add_common(p)
    p.add_argument("--flow", metavar="S0,PHI0")
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("export-mesh", help="write a Wavefront OBJ mesh")
    add_common(p)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--ns", type=int, default=128)
    p.add_argument("--nphi", type=int, default=64)
    p.set_defaults(func=cmd_export_mesh)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
