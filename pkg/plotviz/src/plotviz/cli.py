"""plotviz command line: scan CSV in, PNG surfaces out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .loader import GRID_NAMES, ScanFormatError, load_scan
from .render import render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotviz",
        description="Render qubitpair scan CSV artifacts as heatmaps or 3-D surfaces.",
    )
    parser.add_argument("scan_csv", help="scan artifact (alpha,J,C0,Cfb,lambda_opt,delta)")
    parser.add_argument(
        "--which",
        choices=(*GRID_NAMES, "all"),
        default="all",
        help="which surface to render (default: all three)",
    )
    parser.add_argument("--out", default=".", help="output directory (default: current)")
    parser.add_argument("--surface", action="store_true", help="3-D surface instead of a heatmap")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        data = load_scan(args.scan_csv)
    except ScanFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    targets = GRID_NAMES if args.which == "all" else (args.which,)
    for which in targets:
        info = render(data, which, out_dir / f"{which}.png", surface=args.surface)
        if info is not None:
            print(f"wrote {info.path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
