"""fraccover command line: gen, count, dim, verify, shape, report.

Configuration comes from flags only. Relative ``--out`` paths are resolved
against the global ``--out-dir``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, fileio
from .cover_count import build_scale_series, rasterize
from .errors import FracCoverError
from .fractal_gen import (
    generate_cantor_dust,
    generate_fbm_graph,
    generate_koch,
    generate_sierpinski,
)
from .optimal_cover import shape_profile
from .report import FIXTURES, FixtureSpec, GridSpec, ScaleSpec, run_report
from .scaling_law import NO_TRIM, TrimPolicy, estimate_dimension, trim_scale_regime, verify_area_scaling
from .svg import shape_family_svg


def _out_path(args: argparse.Namespace, name: str) -> Path:
    p = Path(name)
    return p if p.is_absolute() else Path(args.out_dir) / p


def _seed(args: argparse.Namespace) -> int:
    return args.seed if args.seed is not None else args.global_seed


def _trim(args: argparse.Namespace) -> TrimPolicy:
    if args.no_trim:
        return NO_TRIM
    resolution = 1.0 / args.side if args.side else None
    return TrimPolicy(min_count=args.min_count, min_box_cells=args.min_cells, resolution=resolution)


def _add_trim_flags(p: argparse.ArgumentParser, side_help: str) -> None:
    p.add_argument("--side", type=int, default=None, help=side_help)
    p.add_argument("--min-count", type=float, default=8, help="drop scales with fewer boxes")
    p.add_argument("--min-cells", type=float, default=4, help="drop boxes narrower than this many cells")
    p.add_argument("--no-trim", action="store_true", help="fit every scale in the series")


def _add_fixture_flags(p: argparse.ArgumentParser, sets: Sequence[str]) -> None:
    p.add_argument("--set", dest="fixture", required=True, choices=sets)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--hurst", type=float, default=0.5)
    p.add_argument("--n", type=int, default=2**14)
    p.add_argument("--seed", type=int, default=None)


def cmd_gen(args: argparse.Namespace) -> int:
    if args.fixture == "fbm":
        points = generate_fbm_graph(args.hurst, args.n, _seed(args))
    else:
        if args.level is None:
            raise FracCoverError(f"--level is required for --set {args.fixture}")
        gen = {"koch": generate_koch, "sierpinski": generate_sierpinski, "cantor": generate_cantor_dust}
        points = gen[args.fixture](args.level)
    out = _out_path(args, args.out)
    fileio.write_points(out, points, args.format)
    print(f"wrote {len(points)} points to {out}")
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    points = fileio.read_points(Path(args.inp))
    grid = rasterize(points, args.side)
    series = build_scale_series(grid, args.base, args.depth, workers=args.workers)
    out = _out_path(args, args.out)
    fileio.write_series(out, series, args.format)
    print(f"wrote {len(series)} scales to {out} ({grid.occupied_count} occupied cells)")
    return 0


def cmd_dim(args: argparse.Namespace) -> int:
    series = fileio.read_series(Path(args.inp))
    estimate = estimate_dimension(series, _trim(args))
    text = json.dumps(estimate.to_dict(), indent=2) + "\n"
    if args.out:
        _out_path(args, args.out).write_text(text)
    sys.stdout.write(text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    series = trim_scale_regime(fileio.read_series(Path(args.inp)), _trim(args))
    report = verify_area_scaling(series, args.dh)
    if args.out:
        fileio.write_residuals(_out_path(args, args.out), report, args.format)
    sys.stdout.write(json.dumps(report.summary(), indent=2) + "\n")
    return 0


def cmd_shape(args: argparse.Namespace) -> int:
    out = _out_path(args, args.out)
    if out.suffix == ".svg":
        out.write_text(shape_family_svg(args.dh, args.delta, args.c2, args.samples))
    else:
        if len(args.dh) != 1:
            raise FracCoverError("tabular shape output takes exactly one --dh; use .svg for a family")
        shape = shape_profile(args.delta, args.dh[0], args.c2, args.samples)
        fileio.write_shape(out, shape, "json" if out.suffix == ".json" else args.format)
    print(f"wrote {out}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    fixture = FixtureSpec(args.fixture, args.level, args.hurst, args.n, _seed(args))
    trim = NO_TRIM if args.no_trim else TrimPolicy(args.min_count, args.min_cells)
    scale = ScaleSpec(args.base, args.depth, trim)
    bundle = run_report(fixture, GridSpec(args.side), scale, Path(args.out_dir), workers=args.workers)
    summary = {
        "fixture": bundle.fixture,
        "d_h": bundle.estimate.d_h,
        "expected_dimension": bundle.expected_dimension,
        "median_abs_residual": bundle.residuals["median_abs_residual"],
        "pass_flags": bundle.pass_flags,
    }
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return 0 if bundle.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraccover",
        description="Box-counting dimension and optimal-cover shapes for planar fractals.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--out-dir", default=".", help="directory for relative outputs")
    parser.add_argument("--seed", dest="global_seed", type=int, default=0, help="default RNG seed")
    parser.add_argument("--format", choices=("csv", "json"), default="csv", help="tabular output format")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a fixture point set")
    _add_fixture_flags(p, ("koch", "sierpinski", "cantor", "fbm"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("count", help="rasterize points and count boxes across scales")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--side", type=int, required=True)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("dim", help="fit the box-counting dimension of a series")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", default=None)
    _add_trim_flags(p, "grid side the series came from (enables the resolution floor)")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("verify", help="residuals of the cover-area scaling law")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--dh", type=float, required=True)
    p.add_argument("--out", default=None)
    _add_trim_flags(p, "grid side the series came from (enables the resolution floor)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("shape", help="optimal-cover border profile (CSV) or shape family (SVG)")
    p.add_argument("--dh", type=float, nargs="+", required=True)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--c2", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("report", help="run the full pipeline for one fixture")
    _add_fixture_flags(p, FIXTURES)
    p.add_argument("--side", type=int, required=True)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--min-count", type=float, default=8)
    p.add_argument("--min-cells", type=float, default=4)
    p.add_argument("--no-trim", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FracCoverError as err:
        print(f"fraccover {args.command}: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
