"""Standalone figure-regeneration script for aggregate CSV files."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .aggtable import AggregateTable, SchemaError
from .figures import plot_bars, plot_mu_curve


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irsrelay-plots",
        description="Regenerate comparison figures from aggregate CSV files")
    sub = parser.add_subparsers(dest="command", required=True)

    p_mu = sub.add_parser("mu-curve", help="rate vs mu, one curve per input")
    p_mu.add_argument("--input", nargs="+", required=True,
                      help="one aggregate CSV per power level")
    p_mu.add_argument("--labels", help="comma-separated curve labels "
                                       "(default: file stems)")
    p_mu.add_argument("--metric", choices=("reported", "true"), default="true")
    p_mu.add_argument("--out", required=True)

    p_bar = sub.add_parser("bars", help="grouped method bars vs power/sigma")
    p_bar.add_argument("--input", required=True)
    p_bar.add_argument("--axis", choices=("power", "sigma"), required=True)
    p_bar.add_argument("--metric", choices=("reported", "true"), default="true")
    p_bar.add_argument("--out", required=True)
    return parser


def cli_main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "mu-curve":
            paths = [Path(p) for p in args.input]
            if args.labels:
                labels = args.labels.split(",")
                if len(labels) != len(paths):
                    raise ValueError("--labels count must match --input count")
            else:
                labels = [p.stem for p in paths]
            tables = [(lab, AggregateTable.from_file(p))
                      for lab, p in zip(labels, paths)]
            plot_mu_curve(tables, args.out, metric=args.metric)
        else:
            table = AggregateTable.from_file(args.input)
            plot_bars(table, args.axis, args.out, metric=args.metric)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
