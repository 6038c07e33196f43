#!/usr/bin/env python3
"""Rebuild the dimension-by-dimension classification tables for the two
smallest open quasi-cross shapes, (3,1) and (3,2), using the packaged
known-tilings registries, and print the firing statistics."""

import argparse
import sys

from quasicross.classify import classify_range, default_registry, report_text, summarize


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=250)
    parser.add_argument("--table", action="store_true", help="print the full per-dimension table")
    args = parser.parse_args(argv)

    for k_plus, k_minus in ((3, 1), (3, 2)):
        registry = default_registry(k_plus, k_minus)
        run = classify_range(k_plus, k_minus, args.max_n, registry=registry)
        if args.table:
            sys.stdout.write(report_text(run))
        sys.stdout.write(summarize(run).to_text())
        sys.stdout.write("\n")


if __name__ == "__main__":
    main()
