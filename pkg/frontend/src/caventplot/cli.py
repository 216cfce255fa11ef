"""Command-line entry point: plot --csv PATH --kind KIND --out PATH ..."""

from __future__ import annotations

import argparse
import sys

from .csvio import CsvError
from .render import KINDS, PlotError, PlotJob, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render a sweep CSV into a figure file.")
    parser.add_argument("--csv", required=True, help="input sweep CSV")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--logx", action="store_true")
    parser.add_argument("--logy", action="store_true")
    parser.add_argument("--contour", action="store_true",
                        help="overlay the born_ratio = 1 validity boundary")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = PlotJob(csv_path=args.csv, kind=args.kind, out_path=args.out,
                  logx=args.logx, logy=args.logy, contour=args.contour)
    try:
        result = render(job)
    except (CsvError, PlotError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
