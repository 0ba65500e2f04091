#!/usr/bin/env python3
"""Render a gallery of attractor heatmaps spanning both regimes.

Writes one PNG per named parameter pair plus an index CSV recording the
regime, the theoretical dimension and the Bernoulli bound supremum of
each cell. Useful for eyeballing how the attractor fattens as beta1*beta2
crosses 1/4.
"""

import argparse
import sys
from pathlib import Path

from bakerdim.cli import main as bakerdim_main
from bakerdim.dimension import sup_bernoulli_bound, theoretical_attractor_dim
from bakerdim.dynamics import regime
from bakerdim.params import Params

PAIRS = (
    ("contracting_sparse", 0.20, 0.30),
    ("contracting_near_sum_one", 0.45, 0.50),
    ("critical_product_quarter", 0.50, 0.50),
    ("covering_subquarter", 0.60, 0.40),
    ("covering_superquarter", 0.60, 0.55),
    ("covering_symmetric", 0.55, 0.55),
)


def render_one(name: str, beta1: float, beta2: float, args: argparse.Namespace) -> Path:
    out = args.outdir / f"{name}.png"
    code = bakerdim_main([
        "render",
        "--beta1", str(beta1), "--beta2", str(beta2),
        "--n", str(args.n), "--seed", str(args.seed),
        "--bins", str(args.bins), "--threads", str(args.threads),
        "--out", str(out),
    ])
    if code != 0:
        raise SystemExit(f"render failed for {name} (exit {code})")
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("gallery"))
    parser.add_argument("--n", type=int, default=2_000_000)
    parser.add_argument("--bins", type=int, default=512)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=4)
    args = parser.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)

    index = ["name,beta1,beta2,regime,theoretical_dim,sup_bound,product"]
    for name, beta1, beta2 in PAIRS:
        path = render_one(name, beta1, beta2, args)
        params = Params(beta1, beta2)
        sup = sup_bernoulli_bound(params).sup_value
        index.append(
            f"{name},{beta1!r},{beta2!r},{regime(params).value},"
            f"{theoretical_attractor_dim(params)!r},{sup!r},{beta1 * beta2!r}"
        )
        print(f"wrote {path}")

    index_path = args.outdir / "index.csv"
    index_path.write_text("\n".join(index) + "\n")
    print(f"wrote {index_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
