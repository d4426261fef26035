#!/usr/bin/env python3
"""Regenerate the data directories for every figure.

Usage: python scripts/make_all_figures.py [OUT_DIR] [--jobs K] [--fast]

--fast cuts the sample density and integration tolerances; useful for a
quick end-to-end check of the pipeline (the curves are visibly identical,
the tail digits are not).
"""

import argparse
import sys
import time

from lzphoton.figures import FIGURE_IDS, make_figure


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("out", nargs="?", default="figure_data")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--fast", action="store_true")
    args = ap.parse_args()
    overrides = {}
    if args.fast:
        overrides = {"samples": 301, "rel_tol": 1e-8, "abs_tol": 1e-10}
    for fid in FIGURE_IDS:
        t0 = time.monotonic()
        path = make_figure(fid, args.out, overrides, jobs=args.jobs)
        print(f"figure {fid:<3} {time.monotonic() - t0:6.1f} s  {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
