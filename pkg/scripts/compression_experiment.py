#!/usr/bin/env python3
"""End-to-end compression experiment on a synthetic AR(1) image: generate
the image, sweep retention fractions for the exact DCT and a few catalog
transforms, and write the PSNR/SSIM/APE curves."""

import argparse
import json
from pathlib import Path

from dctapprox import ar1_test_image, write_pgm
from dctapprox.cli import main as cli_main

DEFAULT_TRANSFORMS = [
    {"id": "dct8", "dct": 8},
    {"id": "c8_1", "params": "0,0,0,1,1,0,0,1"},
    {"id": "c8_9", "params": "0,0.5,0,1,1,1,1,2"},
    {"id": "c8_15", "params": "1,0.5,0.5,0.5,1,1,0.5,0.5"},
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="codec_results")
    parser.add_argument("--size", type=int, default=512, help="image side length")
    parser.add_argument("--rho", type=float, default=0.95)
    parser.add_argument("--seed", type=int, default=20240817)
    parser.add_argument("--corpus", default=None,
                        help="existing directory of .pgm images (skips generation)")
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.corpus:
        corpus = Path(args.corpus)
    else:
        corpus = out_dir / "corpus"
        corpus.mkdir(exist_ok=True)
        image = ar1_test_image(args.size, args.size, rho=args.rho, seed=args.seed)
        write_pgm(corpus / "ar1_synthetic.pgm", image)

    tlist = out_dir / "transforms.json"
    tlist.write_text(json.dumps(DEFAULT_TRANSFORMS, indent=2))
    rc = cli_main([
        "sweep", "--corpus", str(corpus), "--transforms", str(tlist),
        "--out", str(out_dir / "curves.csv"),
        "--per-image", str(out_dir / "per_image.csv"),
    ])
    raise SystemExit(rc)


if __name__ == "__main__":
    main()
