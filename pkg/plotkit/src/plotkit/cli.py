"""CLI: rgplot <kind> <input.csv> -o <image>."""

from __future__ import annotations

import argparse
import sys

from .readers import ParseError
from .render import RENDERERS, SNAPSHOT_FIELDS, PlotJob, render


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rgplot", description="Render images from radialgas CSV artifacts")
    parser.add_argument("kind", choices=sorted(RENDERERS))
    parser.add_argument("input", help="path to the CSV artifact")
    parser.add_argument("-o", "--output", required=True, help="output image path")
    parser.add_argument("--fields", default=",".join(SNAPSHOT_FIELDS),
                        help="comma-separated snapshot fields (snapshot kind only)")
    parser.add_argument("--title", default=None)
    parser.add_argument("--colormap", default="RdBu_r")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = PlotJob(kind=args.kind, input_path=args.input, output_path=args.output,
                      fields=tuple(args.fields.split(",")), title=args.title,
                      colormap=args.colormap)
        render(job)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
