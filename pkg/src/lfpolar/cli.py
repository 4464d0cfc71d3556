"""Command-line pipeline over the lightfield polar toolkit.

Subcommands:

  synth            render a Gaussian scene into a plenoptic raster
  check-john       finite-difference residual sweeps of the two
                   lightfield identities
  check-asgeirsson continuous circle-integral checks, or the discrete
                   pixel-sum symmetry table of a polar lightfield
  to-polar         resample a raster onto the polar bin grid
                   (archive plus optional layout image)
  colormap         block-colormap image and the reverse map in original
                   raster coordinates
  roundtrip-check  coordinate-transform round-trip error measurement

Every run prints its resolved configuration as '# key=value' lines and
embeds the same echo in any CSV it writes. Runs are deterministic for
fixed flags and --seed; repeated runs produce byte-identical outputs.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or
malformed input), 3 numeric failure (--assert tolerance exceeded).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from . import io as lfio
from .asgeirsson import discrete_asgeirsson_report, theorem1_check, theorem2_check
from .coords import RayTP, XiPoint, polar_from_ray, ray_from_polar, ray_from_xi, xi_from_ray
from .resample import (
    DiscreteLightfield,
    render_colormap,
    render_coordinate_map_original,
    render_polar_layout,
    to_polar_grid,
)
from .residuals import StencilSpec, residual_sweep
from .synth import as_xi_field, radiance_field, sample_plenoptic_raster


class ToleranceExceeded(Exception):
    """An --assert run exceeded its tolerance (exit code 3)."""


class _UsageError(Exception):
    """Bad flags or flag combinations (exit code 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _echo_config(command: str, args, extra: dict) -> dict:
    """Print the resolved configuration; return it for CSV embedding."""
    cfg = {"command": command, "seed": args.seed, "threads": args.threads}
    cfg.update(extra)
    for key in sorted(cfg):
        print(f"# {key}={lfio.format_cell(cfg[key])}")
    return cfg


def _load_scene(args):
    if getattr(args, "scene", None):
        return lfio.read_scene(args.scene)
    return lfio.fixture_scene()


def _load_geometry(args):
    geom = lfio.read_geometry(args.geometry)
    if getattr(args, "shift", None) is not None:
        geom = dataclasses.replace(geom, shift=args.shift)
    return geom


def cmd_synth(args) -> int:
    scene = _load_scene(args)
    geom = _load_geometry(args)
    _echo_config(
        "synth",
        args,
        {
            "scene": args.scene or "builtin",
            "geometry": args.geometry,
            "out": args.out,
            "depth": args.depth,
        },
    )
    lf = sample_plenoptic_raster(scene, geom)
    peak = float(lf.raster.max())
    print(f"# scale={lfio.format_cell(peak)}")
    lfio.write_raster(lf.raster / peak, args.out, maxval=255 if args.depth == 8 else 65535)
    print(f"wrote {args.out} ({lf.raster.shape[0]}x{lf.raster.shape[1]}, {args.depth}-bit)")
    return 0


def cmd_check_john(args) -> int:
    scene = _load_scene(args)
    cfg = _echo_config(
        "check-john",
        args,
        {
            "scene": args.scene or "builtin",
            "h": args.h,
            "points": args.points,
            "box": args.box,
            "which": args.which,
        },
    )
    field = radiance_field(scene)
    rng = np.random.default_rng(args.seed)
    pts = rng.uniform(-args.box, args.box, size=(4, args.points))
    st = StencilSpec(h=args.h)
    names = ("john", "ultrahyperbolic") if args.which == "both" else (args.which,)
    reports = []
    for which in names:
        if which == "john":
            rep = residual_sweep(field, RayTP(*pts), st, which="john")
        else:
            rep = residual_sweep(as_xi_field(field), XiPoint(*pts), st, which="ultrahyperbolic")
        reports.append(rep)
        print(
            f"{which}: h={rep.h} n={rep.sample_count} "
            f"max_abs={rep.max_abs:.6e} mean_abs={rep.mean_abs:.6e} rms={rep.rms:.6e}"
        )
    if args.out:
        rows = [(r.which, r.h, r.sample_count, r.max_abs, r.mean_abs, r.rms) for r in reports]
        lfio.write_csv_report(args.out, ("which", "h", "n", "max_abs", "mean_abs", "rms"), rows, config=cfg)
        print(f"wrote {args.out}")
    if args.assert_mode:
        if args.max_rms is None:
            raise _UsageError("--assert requires --max-rms")
        worst = max(r.rms for r in reports)
        if worst > args.max_rms:
            raise ToleranceExceeded(f"rms {worst:.6e} exceeds --max-rms {args.max_rms:.6e}")
        print(f"assert ok: worst rms {worst:.6e} <= {args.max_rms:.6e}")
    return 0


def _continuous_asgeirsson(args, cfg) -> int:
    scene = _load_scene(args)
    field_xi = as_xi_field(radiance_field(scene))
    rng = np.random.default_rng(args.seed)
    rows = []
    worst = 0.0
    for _ in range(args.trials):
        center = XiPoint(*(float(c) for c in rng.uniform(-args.center_box, args.center_box, 4)))
        radius = args.rmax * (1.0 - rng.random())  # in (0, rmax]
        rep = theorem1_check(field_xi, center, radius, n_nodes=args.nodes)
        rows.append(("theorem1", *center, radius, radius, args.nodes, rep.lhs, rep.rhs, rep.abs_diff, rep.rel_diff))
        worst = max(worst, rep.rel_diff)
        r1 = args.rmax * (1.0 - rng.random())
        r2 = args.rmax * (1.0 - rng.random())
        while r2 == r1:
            r2 = args.rmax * (1.0 - rng.random())
        rep = theorem2_check(field_xi, center, r1, r2, n_nodes=args.nodes2)
        rows.append(("theorem2", *center, r1, r2, args.nodes2, rep.lhs, rep.rhs, rep.abs_diff, rep.rel_diff))
        worst = max(worst, rep.rel_diff)
    print(f"continuous: {len(rows)} checks, worst rel_diff={worst:.6e}")
    if args.out:
        columns = (
            "theorem",
            "c1",
            "c2",
            "c3",
            "c4",
            "radius_14",
            "radius_23",
            "n_nodes",
            "lhs",
            "rhs",
            "abs_diff",
            "rel_diff",
        )
        lfio.write_csv_report(args.out, columns, rows, config=cfg)
        print(f"wrote {args.out}")
    if args.assert_mode:
        tol = args.tol if args.tol is not None else 1e-8
        if worst > tol:
            raise ToleranceExceeded(f"rel_diff {worst:.6e} exceeds {tol:.6e}")
        print(f"assert ok: worst rel_diff {worst:.6e} <= {tol:.6e}")
    return 0


def _discrete_asgeirsson(args, cfg) -> int:
    if args.polar:
        if args.scene:
            raise _UsageError("--polar and --scene are mutually exclusive")
        pl = lfio.read_polar_archive(args.polar)
    else:
        field = radiance_field(_load_scene(args))
        pl = to_polar_grid(
            field,
            args.r1max,
            args.r2max,
            args.oversample,
            rho=args.rho,
            threads=args.threads,
        )
    all_rows = discrete_asgeirsson_report(pl)
    rows = all_rows if args.include_partial else [r for r in all_rows if r.fully_valid]
    worst = max((r.rel_diff for r in rows), default=0.0)
    print(f"discrete: {len(rows)} pairs reported ({len(all_rows)} total), worst rel_diff={worst:.6e}")
    if args.out:
        columns = ("R1", "R2", "sum_ab", "sum_ba", "abs_diff", "rel_diff", "fully_valid")
        table = [(r.r1, r.r2, r.sum_ab, r.sum_ba, r.abs_diff, r.rel_diff, r.fully_valid) for r in rows]
        lfio.write_csv_report(args.out, columns, table, config=cfg)
        print(f"wrote {args.out}")
    if args.assert_mode:
        tol = args.tol if args.tol is not None else 5e-2
        if worst > tol:
            raise ToleranceExceeded(f"rel_diff {worst:.6e} exceeds {tol:.6e}")
        print(f"assert ok: worst rel_diff {worst:.6e} <= {tol:.6e}")
    return 0


def cmd_check_asgeirsson(args) -> int:
    extra = {"mode": args.mode}
    if args.mode == "continuous":
        extra.update(
            {
                "scene": args.scene or "builtin",
                "trials": args.trials,
                "nodes": args.nodes,
                "nodes2": args.nodes2,
                "rmax": args.rmax,
                "center_box": args.center_box,
            }
        )
        cfg = _echo_config("check-asgeirsson", args, extra)
        return _continuous_asgeirsson(args, cfg)
    extra.update(
        {
            "source": args.polar or (args.scene or "builtin"),
            "r1max": args.r1max,
            "r2max": args.r2max,
            "rho": args.rho,
            "oversample": args.oversample,
            "include_partial": args.include_partial,
        }
    )
    cfg = _echo_config("check-asgeirsson", args, extra)
    return _discrete_asgeirsson(args, cfg)


def cmd_to_polar(args) -> int:
    geom = _load_geometry(args)
    raster = lfio.read_raster(args.raster)
    lf = DiscreteLightfield(geometry=geom, raster=raster)
    _echo_config(
        "to-polar",
        args,
        {
            "raster": args.raster,
            "geometry": args.geometry,
            "r1max": args.r1max,
            "r2max": args.r2max,
            "rho": args.rho,
            "shift": geom.shift,
            "shift_sign": args.shift_sign,
            "oversample": args.oversample,
            "separators": args.separators,
            "out": args.out,
        },
    )
    jitter_rng = np.random.default_rng(args.seed) if args.oversample > 1 else None
    pl = to_polar_grid(
        lf,
        args.r1max,
        args.r2max,
        args.oversample,
        rho=args.rho,
        shift_sign=args.shift_sign,
        jitter_rng=jitter_rng,
        threads=args.threads,
    )
    valid = sum(int(np.count_nonzero(pl.block_mask(r1, r2))) for r1, r2 in pl.blocks())
    total = sum(pl.block_mask(r1, r2).size for r1, r2 in pl.blocks())
    print(f"sampled {total} bins, {valid} valid")
    lfio.write_polar_archive(pl, args.out)
    print(f"wrote {args.out}")
    if args.layout_out:
        lfio.write_raster(render_polar_layout(pl, separators=args.separators), args.layout_out)
        print(f"wrote {args.layout_out}")
    return 0


def cmd_colormap(args) -> int:
    geom = _load_geometry(args)
    _echo_config(
        "colormap",
        args,
        {
            "geometry": args.geometry,
            "r1max": args.r1max,
            "r2max": args.r2max,
            "rho": args.rho,
            "shift": geom.shift,
            "shift_sign": args.shift_sign,
            "oversample": args.oversample,
            "out": args.out,
        },
    )
    # validity comes from geometry alone; sample a zero raster
    height, width = geom.raster_shape
    lf = DiscreteLightfield(geometry=geom, raster=np.zeros((height, width)))
    pl = to_polar_grid(
        lf,
        args.r1max,
        args.r2max,
        args.oversample,
        rho=args.rho,
        shift_sign=args.shift_sign,
        threads=args.threads,
    )
    lfio.write_raster(render_colormap(pl), args.out)
    print(f"wrote {args.out}")
    if args.map_out:
        result = render_coordinate_map_original(
            geom,
            args.r1max,
            args.r2max,
            args.oversample,
            rho=args.rho,
            shift_sign=args.shift_sign,
        )
        lfio.write_raster(result.image, args.map_out)
        print(f"wrote {args.map_out} ({result.collisions} collisions)")
    return 0


def cmd_roundtrip_check(args) -> int:
    cfg = _echo_config("roundtrip-check", args, {"n": args.n, "bound": args.bound})
    rng = np.random.default_rng(args.seed)
    rays = RayTP(*rng.uniform(-args.bound, args.bound, size=(4, args.n)))
    back = ray_from_xi(xi_from_ray(rays))
    err_xi = max(float(np.abs(np.asarray(b) - np.asarray(a)).max()) for a, b in zip(rays, back))
    back = ray_from_polar(polar_from_ray(rays))
    err_polar = max(float(np.abs(np.asarray(b) - np.asarray(a)).max()) for a, b in zip(rays, back))
    print(f"split-coordinate round trip: max abs error {err_xi:.6e}")
    print(f"polar round trip:            max abs error {err_polar:.6e}")
    if args.out:
        rows = [("xi", args.n, args.bound, err_xi), ("polar", args.n, args.bound, err_polar)]
        lfio.write_csv_report(args.out, ("transform", "n", "bound", "max_abs_error"), rows, config=cfg)
        print(f"wrote {args.out}")
    if args.assert_mode:
        if err_xi > args.tol_xi:
            raise ToleranceExceeded(f"xi round-trip error {err_xi:.6e} exceeds {args.tol_xi:.6e}")
        if err_polar > args.tol_polar:
            raise ToleranceExceeded(f"polar round-trip error {err_polar:.6e} exceeds {args.tol_polar:.6e}")
        print("assert ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lfpolar", description="lightfield polar-coordinate toolkit")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized stages (default 0)")
    p.add_argument("--threads", type=int, default=1, help="worker threads for block-parallel stages")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    sp = sub.add_parser("synth", help="render a Gaussian scene into a plenoptic raster")
    sp.add_argument("--scene", help="scene text file (default: built-in fixture)")
    sp.add_argument("--geometry", required=True, help="geometry text file")
    sp.add_argument("--out", required=True, help="output PGM path")
    sp.add_argument("--shift", type=float, help="override the geometry file's shift")
    sp.add_argument("--depth", type=int, choices=(8, 16), default=16, help="output bit depth")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("check-john", help="residual sweep of the lightfield identities")
    sp.add_argument("--scene", help="scene text file (default: built-in fixture)")
    sp.add_argument("--h", type=float, default=0.05, help="stencil step")
    sp.add_argument("--points", type=int, default=1000, help="number of random sample points")
    sp.add_argument("--box", type=float, default=2.0, help="sample points drawn from [-box, box]^4")
    sp.add_argument("--which", choices=("john", "ultrahyperbolic", "both"), default="both")
    sp.add_argument("--out", help="CSV report path")
    sp.add_argument("--assert", dest="assert_mode", action="store_true", help="exit 3 if rms exceeds --max-rms")
    sp.add_argument("--max-rms", type=float, help="rms tolerance for --assert")
    sp.set_defaults(func=cmd_check_john)

    sp = sub.add_parser("check-asgeirsson", help="circle-integral identity checks")
    sp.add_argument("--mode", choices=("continuous", "discrete"), required=True)
    sp.add_argument("--scene", help="scene text file (default: built-in fixture)")
    sp.add_argument("--polar", help="discrete mode: polar archive to check instead of a scene")
    sp.add_argument("--trials", type=int, default=20, help="continuous mode: random configurations")
    sp.add_argument("--nodes", type=int, default=512, help="continuous mode: single-circle quadrature nodes")
    sp.add_argument("--nodes2", type=int, default=256, help="continuous mode: double-circle nodes per axis")
    sp.add_argument("--rmax", type=float, default=2.0, help="continuous mode: radii drawn from (0, rmax]")
    sp.add_argument("--center-box", type=float, default=1.0, help="continuous mode: centers from [-box, box]^4")
    sp.add_argument("--r1max", type=int, default=4, help="discrete mode: max first radius")
    sp.add_argument("--r2max", type=int, default=4, help="discrete mode: max second radius")
    sp.add_argument("--rho", type=float, default=1.0, help="discrete mode: radial scale")
    sp.add_argument("--oversample", type=int, default=1, help="discrete mode: angular sub-samples per bin axis")
    sp.add_argument("--include-partial", action="store_true", help="discrete mode: report pairs with invalid pixels too")
    sp.add_argument("--out", help="CSV report path")
    sp.add_argument("--assert", dest="assert_mode", action="store_true", help="exit 3 if rel_diff exceeds --tol")
    sp.add_argument("--tol", type=float, help="rel_diff tolerance for --assert (default 1e-8 continuous, 5e-2 discrete)")
    sp.set_defaults(func=cmd_check_asgeirsson)

    sp = sub.add_parser("to-polar", help="resample a plenoptic raster onto the polar bin grid")
    sp.add_argument("--raster", required=True, help="input PGM/PPM")
    sp.add_argument("--geometry", required=True, help="geometry text file")
    sp.add_argument("--r1max", type=int, required=True)
    sp.add_argument("--r2max", type=int, required=True)
    sp.add_argument("--rho", type=float, default=1.0, help="radial scale (pixels per ring)")
    sp.add_argument("--shift", type=float, help="override the geometry file's shift")
    sp.add_argument("--shift-sign", type=int, choices=(1, -1), default=1, help="sign of the shift correction")
    sp.add_argument("--oversample", type=int, default=1, help="sub-samples per bin axis (jittered, seeded by --seed)")
    sp.add_argument("--separators", action="store_true", help="draw 1-pixel block separators in the layout image")
    sp.add_argument("--out", required=True, help="output polar archive")
    sp.add_argument("--layout-out", help="optional layout image (PGM/PPM)")
    sp.set_defaults(func=cmd_to_polar)

    sp = sub.add_parser("colormap", help="block colormap and original-coordinates map images")
    sp.add_argument("--geometry", required=True, help="geometry text file")
    sp.add_argument("--r1max", type=int, default=7)
    sp.add_argument("--r2max", type=int, default=7)
    sp.add_argument("--rho", type=float, default=1.0)
    sp.add_argument("--shift", type=float, help="override the geometry file's shift")
    sp.add_argument("--shift-sign", type=int, choices=(1, -1), default=1)
    sp.add_argument("--oversample", type=int, default=1)
    sp.add_argument("--out", required=True, help="output colormap PPM")
    sp.add_argument("--map-out", help="optional original-coordinates map PPM")
    sp.set_defaults(func=cmd_colormap)

    sp = sub.add_parser("roundtrip-check", help="coordinate round-trip error measurement")
    sp.add_argument("--n", type=int, default=1000000, help="number of random rays")
    sp.add_argument("--bound", type=float, default=100.0, help="components drawn from [-bound, bound]")
    sp.add_argument("--out", help="CSV report path")
    sp.add_argument("--assert", dest="assert_mode", action="store_true")
    sp.add_argument("--tol-xi", type=float, default=1e-12, help="split round-trip tolerance for --assert")
    sp.add_argument("--tol-polar", type=float, default=1e-9, help="polar round-trip tolerance for --assert")
    sp.set_defaults(func=cmd_roundtrip_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help prints and exits 0
        return 0 if exc.code in (None, 0) else 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ToleranceExceeded as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        # covers raster/scene/geometry/archive format errors and bad data
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
