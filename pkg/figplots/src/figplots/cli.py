"""Command-line entry point: `figplots render <manifest_dir> --out <path>`."""

from __future__ import annotations

import argparse
import sys

import matplotlib.pyplot as plt

from . import __version__
from .manifest import ManifestError
from .render import render


def main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="figplots")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    rp = sub.add_parser("render", help="render one manifest directory")
    rp.add_argument("manifest_dir")
    rp.add_argument("--out", required=True, help="output image path")
    rp.add_argument("--format", choices=["svg", "png"], default=None)
    args = p.parse_args(argv)
    try:
        fig = render(args.manifest_dir, args.out, args.format)
    except ManifestError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 2
    plt.close(fig)
    print(args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
