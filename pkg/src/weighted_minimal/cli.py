"""Command-line front end.

Subcommands::

    weighted-minimal generate --config job.json --obj out.obj
    weighted-minimal verify   --config job.json --csv out.csv
    weighted-minimal ode      --A 1 --b 0.6 --c 0.8 --u-end 1 --step 1e-3 --csv ode.csv
    weighted-minimal sweep    --config job.json --param A --values 0.25,1,4 --csv sweep.csv
    weighted-minimal gauss    --family sphere --bracket 0.5,2

Exit status: 0 success, 1 verification failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .config import ConfigError, load_config
from .errors import WeightedMinimalError
from .gallery import GallerySpec, find_minimal_radius, make_density, make_gallery_surface
from .geometry import minimality_report, weighted_mean_curvature
from .mesh_io import export_obj, export_report_csv, fmt_g, tessellate, write_text
from .ruled import ode_vs_closed_form

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ODE_TOL = 1e-6


def _floats(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not vals or not all(math.isfinite(x) for x in vals):
        raise argparse.ArgumentTypeError(f"expected finite numbers, got {text!r}")
    return vals


def _finite_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return x


def _bracket(text: str) -> tuple[float, float]:
    vals = _floats(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("bracket must be lo,hi")
    return vals[0], vals[1]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weighted-minimal",
        description="Weighted mean curvature and minimal surfaces in R^3 with density.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="tessellate the configured surface and write OBJ")
    p.add_argument("--config", required=True)
    p.add_argument("--obj", help="output OBJ path (overrides outputs.obj)")
    p.add_argument("--nu", type=int)
    p.add_argument("--nv", type=int)

    p = sub.add_parser("verify", help="evaluate H_phi on a grid; exit 0 iff max|H_phi| < tolerance")
    p.add_argument("--config", required=True)
    p.add_argument("--csv", help="output CSV path (overrides outputs.csv)")

    p = sub.add_parser("ode", help="integrate the directrix ODE and compare with the closed form")
    p.add_argument("--A", type=_finite_float, default=1.0)
    p.add_argument("--b", type=_finite_float, default=1.0)
    p.add_argument("--c", type=_finite_float, default=0.0)
    p.add_argument("--u-end", type=_finite_float, default=1.0)
    p.add_argument("--step", type=_finite_float, default=1e-3)
    p.add_argument("--csv")

    p = sub.add_parser("sweep", help="max|H_phi| for a range of one surface parameter")
    p.add_argument("--config", required=True)
    p.add_argument("--param", required=True)
    p.add_argument("--values", type=_floats, required=True)
    p.add_argument("--csv")

    p = sub.add_parser("gauss", help="minimal radius of centered spheres/cylinders in Gauss space")
    p.add_argument("--family", choices=("sphere", "cylinder"), required=True)
    p.add_argument("--bracket", type=_bracket, default=(0.5, 2.0))
    return parser


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_generate(args) -> int:
    cfg = load_config(args.config)
    out = args.obj or cfg.outputs.get("obj")
    if not out:
        raise ConfigError("no OBJ destination: pass --obj or set outputs.obj")
    nu = args.nu or cfg.grid[0]
    nv = args.nv or cfg.grid[1]
    mesh = tessellate(cfg.build_surface(), nu, nv)
    export_obj(mesh, out)
    _err(f"wrote {len(mesh.vertices)} vertices, {len(mesh.faces)} quads to {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    report = minimality_report(cfg.build_surface(), cfg.build_density(), *cfg.grid, cfg.tolerance)
    out = args.csv or cfg.outputs.get("csv")
    if out:
        export_report_csv(report, out)
    status = "PASS" if report.passed else "FAIL"
    _err(f"{status} max_abs_Hphi={report.max_abs_Hphi:.6e} mean_abs_Hphi={report.mean_abs_Hphi:.6e} "
         f"tolerance={cfg.tolerance:g}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_ode(args) -> int:
    lines = ["u,x,y,z,vx,vy,vz,x_cf,y_cf,z_cf,dx,dy,dz,speed_err"]
    sol, P, V = ode_vs_closed_form(args.A, args.b, args.c, args.u_end, args.step)
    delta = sol.position - P
    speed = np.linalg.norm(sol.velocity, axis=1) - 1.0
    for k in range(len(sol.u)):
        row = [sol.u[k], *sol.position[k], *sol.velocity[k], *P[k], *delta[k], speed[k]]
        lines.append(",".join(fmt_g(float(x), 12) for x in row))
    if args.csv:
        write_text("\n".join(lines) + "\n", args.csv)
    sup = float(np.max(np.abs(delta)))
    ok = sup < ODE_TOL
    _err(f"{'PASS' if ok else 'FAIL'} sup_delta={sup:.6e} speed_drift={sol.speed_drift:.6e} "
         f"steps={len(sol.u) - 1}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    base = load_config(args.config)
    density = base.build_density()
    lines = ["param,value,max_abs_Hphi,pass"]
    all_ok = True
    for value in args.values:
        cfg = base.with_surface_param(args.param, value)
        report = minimality_report(cfg.build_surface(), density, *cfg.grid, cfg.tolerance)
        all_ok &= report.passed
        lines.append(f"{args.param},{fmt_g(value, 12)},{fmt_g(report.max_abs_Hphi, 12)},{int(report.passed)}")
    text = "\n".join(lines) + "\n"
    if args.csv:
        write_text(text, args.csv)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_gauss(args) -> int:
    density = make_density("gaussian")
    R = find_minimal_radius(args.family, density, args.bracket)
    print(f"{R:.9f}")
    if args.family == "sphere":
        r = 1 / math.sqrt(2)
        s = make_gallery_surface(GallerySpec("sphere", R=r))
        h = weighted_mean_curvature(s, density, 1.0, 1.0)[1]
        _err(f"note: radius 1/sqrt(2) is not minimal under H_phi = H - <grad phi, N>/2 "
             f"(H_phi = {h:.6f} there); computed root {R:.9f}")
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "ode": cmd_ode,
    "sweep": cmd_sweep,
    "gauss": cmd_gauss,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, WeightedMinimalError) as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
