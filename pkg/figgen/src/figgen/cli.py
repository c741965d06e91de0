"""figgen command line: one figure per invocation.

Exit codes: 0 rendered, 1 missing/garbled input, 2 usage error (from
argparse).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from figgen.render import render
from figgen.spec import FIGURES, FiggenError, build_spec


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figgen",
        description="Render quadropt CSV datasets into a multi-panel figure.",
    )
    parser.add_argument("--figure", required=True, choices=FIGURES)
    parser.add_argument(
        "--data-dir", required=True, help="directory holding the panel CSV files"
    )
    parser.add_argument("--out", required=True, help="output image (.svg or .png)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = build_spec(args.figure, args.data_dir)
        render(spec, args.out)
    except FiggenError as exc:
        print(f"figgen: {exc}", file=sys.stderr)
        return 1
    print(f"{args.figure} -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
