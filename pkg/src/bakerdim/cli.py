"""Command-line interface: estimation runs, parameter sweeps, verification.

Artifacts are CSV (shortest round-trip decimals, LF endings, header row),
JSON (always embedding config, seed and tool version) and 8-bit grayscale
PNG heatmaps. Exit codes: 0 success, 1 verification failure, 2 usage or
domain error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .dimension import fit_box_dimension, moran_exponent, sup_bernoulli_bound, theoretical_attractor_dim
from .dynamics import attractor_sample, regime
from .params import Params
from .verify import SUITES, run_suite


def _parse_window(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def _parse_range(text: str) -> tuple[float, float]:
    """A beta range 'lo:hi', or a single value 'v' meaning the cell [v, v]."""
    lo, sep, hi = text.partition(":")
    if not sep:
        v = float(lo)
        return v, v
    return float(lo), float(hi)


def _threads(args: argparse.Namespace) -> int:
    if getattr(args, "threads", None) is not None:
        return max(1, args.threads)
    env = os.environ.get("BAKER_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"BAKER_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _fmt(x: float) -> str:
    """Shortest decimal that round-trips the float (at most 17 significant digits)."""
    return repr(float(x))


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def _emit_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, default=_json_default) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _emit_csv(header: str, rows, out: str | None) -> None:
    lines = [header]
    lines.extend(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_moran(args: argparse.Namespace) -> int:
    params = Params(args.beta1, args.beta2)
    res = moran_exponent(params)
    _emit_json(
        {
            "config": {"command": "moran", "beta1": args.beta1, "beta2": args.beta2},
            "seed": None,
            "version": __version__,
            "d": res.d,
            "residual": res.residual,
        },
        args.out,
    )
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    params = Params(args.beta1, args.beta2)
    profile = sup_bernoulli_bound(params, grid=args.grid)
    rows = zip(
        profile.ps,
        profile.entropy,
        profile.contraction,
        profile.bound_vertical,
        profile.bound_horizontal,
        profile.bound_combined,
    )
    _emit_csv(
        "p,entropy,xi,bound_v,bound_h,bound_combined",
        ([float(v) for v in row] for row in rows),
        args.out,
    )
    summary = {
        "config": {
            "command": "bounds",
            "beta1": args.beta1,
            "beta2": args.beta2,
            "grid": args.grid,
            "out": args.out,
        },
        "seed": None,
        "version": __version__,
        "sup_p": profile.sup_p,
        "sup_value": profile.sup_value,
        "product_ge_quarter": params.beta1 * params.beta2 >= 0.25,
        "regime": regime(params).value,
    }
    sys.stdout.write(json.dumps(summary, indent=2, default=_json_default) + "\n")
    return 0


def _sampled_points(args: argparse.Namespace) -> np.ndarray:
    params = Params(args.beta1, args.beta2)
    weights = None if args.p is None else (args.p, 1.0 - args.p)
    return attractor_sample(params, args.n, args.seed, weights=weights, threads=_threads(args)).points


def cmd_attractor(args: argparse.Namespace) -> int:
    pts = _sampled_points(args)
    _emit_csv("x,y", ((float(x), float(y)) for x, y in pts), args.out)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    from PIL import Image

    pts = _sampled_points(args)
    counts, _, _ = np.histogram2d(
        pts[:, 0], pts[:, 1], bins=args.bins, range=[[-1.0, 1.0], [-1.0, 1.0]]
    )
    # rows top-down in y, columns left-right in x
    grid = counts.T[::-1]
    peak = grid.max()
    if peak > 0:
        scaled = 255.0 * np.log1p(grid) / np.log1p(peak)
    else:
        scaled = np.zeros_like(grid)
    img = Image.fromarray(np.rint(scaled).astype(np.uint8), mode="L")
    img.save(args.out, format="PNG")
    return 0


def cmd_boxdim(args: argparse.Namespace) -> int:
    if args.points is not None:
        pts = np.loadtxt(args.points, delimiter=",", skiprows=1, ndmin=2)
        source = {"points": args.points}
    else:
        if args.beta1 is None or args.beta2 is None:
            raise ValueError("boxdim needs --beta1/--beta2 when no points CSV is given")
        pts = _sampled_points(args)
        source = {"beta1": args.beta1, "beta2": args.beta2, "n": args.n, "p": args.p}
    fit = fit_box_dimension(pts, window=args.window)
    _emit_json(
        {
            "config": {"command": "boxdim", "window": list(args.window), **source},
            "seed": args.seed if args.points is None else None,
            "version": __version__,
            "slope": fit.slope,
            "r2": fit.r_squared,
            "counts": fit.counts,
            "flagged": fit.flagged,
        },
        args.out,
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(args.suite)
    _emit_json(
        {
            "config": {"command": "verify", "suite": args.suite},
            "seed": None,
            "version": __version__,
            **report.to_dict(),
        },
        args.out,
    )
    return 0 if report.passed else 1


def cmd_sweep(args: argparse.Namespace) -> int:
    (lo1, hi1), (lo2, hi2) = args.beta1, args.beta2
    if args.grid < 1 or lo1 > hi1 or lo2 > hi2:
        raise ValueError("sweep needs grid >= 1 and nonempty beta ranges")
    axis1 = np.linspace(lo1, hi1, args.grid)
    axis2 = np.linspace(lo2, hi2, args.grid)

    def rows():
        for b1 in axis1:
            for b2 in axis2:
                params = Params(float(b1), float(b2))
                yield (
                    float(b1),
                    float(b2),
                    regime(params).value,
                    theoretical_attractor_dim(params),
                    sup_bernoulli_bound(params).sup_value,
                    float(b1) * float(b2),
                    float(b1) + float(b2),
                )

    _emit_csv("beta1,beta2,regime,theoretical_dim,sup_bound,product,sum", rows(), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_params(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--beta1", type=float, required=True, help="horizontal rate of the upper branch")
    sub.add_argument("--beta2", type=float, required=True, help="horizontal rate of the lower branch")


def _add_sampling(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--n", type=int, default=100_000, help="number of sampled points")
    sub.add_argument("--seed", type=int, default=0, help="generator seed")
    sub.add_argument("--p", type=float, default=None,
                     help="probability of the +1 future symbol (default: regime weights)")
    sub.add_argument("--threads", type=int, default=None,
                     help="worker threads (default: BAKER_THREADS or all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bakerdim",
        description="Dimension toolkit for skew Baker-type transformations of the square.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("moran", help="similarity dimension from the two contraction rates")
    _add_params(p)
    p.add_argument("--out", default=None, help="JSON path (default: stdout)")
    p.set_defaults(func=cmd_moran)

    p = commands.add_parser("bounds", help="per-p dimension bounds and their supremum")
    _add_params(p)
    p.add_argument("--grid", type=int, default=201, help="number of p rows")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_bounds)

    p = commands.add_parser("attractor", help="sample attractor points to CSV")
    _add_params(p)
    _add_sampling(p)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_attractor)

    p = commands.add_parser("render", help="render an occupancy heatmap PNG")
    _add_params(p)
    _add_sampling(p)
    p.add_argument("--bins", type=int, default=512, help="image resolution per axis")
    p.add_argument("--out", required=True, help="PNG path")
    p.set_defaults(func=cmd_render)

    p = commands.add_parser("boxdim", help="box-counting dimension of sampled or loaded points")
    p.add_argument("points", nargs="?", default=None, help="CSV of points (default: sample inline)")
    p.add_argument("--beta1", type=float, default=None, help="horizontal rate of the upper branch")
    p.add_argument("--beta2", type=float, default=None, help="horizontal rate of the lower branch")
    _add_sampling(p)
    p.add_argument("--window", type=_parse_window, default=(4, 10), metavar="KMIN:KMAX",
                   help="dyadic scale window for the log-log fit")
    p.add_argument("--out", default=None, help="JSON path (default: stdout)")
    p.set_defaults(func=cmd_boxdim)

    p = commands.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--out", default=None, help="JSON path (default: stdout)")
    p.set_defaults(func=cmd_verify)

    p = commands.add_parser("sweep", help="Cartesian parameter sweep to CSV")
    p.add_argument("--beta1", type=_parse_range, required=True, metavar="LO:HI",
                   help="range (or single value) for the upper-branch rate")
    p.add_argument("--beta2", type=_parse_range, required=True, metavar="LO:HI",
                   help="range (or single value) for the lower-branch rate")
    p.add_argument("--grid", type=int, default=10, help="cells per axis")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:  # domain and usage errors, including regime errors
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
