#!/usr/bin/env python3
"""Emit the plot-ready CSV sets for all four measurement figures.

Usage: python scripts/reproduce_figures.py [--outdir DIR] [--config run.yaml]
"""

import argparse
import os
import sys

from bsbshaper import figures
from bsbshaper.config import load_config


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="figure_data")
    ap.add_argument("--config", default=None, help="YAML run configuration")
    ap.add_argument("--only", choices=figures.FIGURES, default=None)
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    config = load_config(args.config, {"outdir": args.outdir})
    wanted = [args.only] if args.only else figures.FIGURES
    for fig in wanted:
        for path in figures.run_figure_pipeline(config, fig):
            print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
