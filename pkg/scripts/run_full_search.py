#!/usr/bin/env python3
"""Run the exhaustive 7^8 sweep and write the canonical Pareto front plus
the rendered table summaries."""

import argparse
from pathlib import Path

from dctapprox.cli import main as cli_main


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rho", type=float, default=0.95)
    parser.add_argument("--out-dir", default="search_results")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    front = out_dir / "front.csv"
    rc = cli_main([
        "search", "--rho", str(args.rho), "--out", str(front),
        "--workers", str(args.workers),
    ])
    if rc == 0:
        rc = cli_main(["report", "--in", str(front), "--out-dir", str(out_dir)])
    raise SystemExit(rc)


if __name__ == "__main__":
    main()
