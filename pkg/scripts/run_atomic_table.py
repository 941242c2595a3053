#!/usr/bin/env python3
"""Rebuild the atomic rank-4 table: every row (and dual) within the given bounds,
the collapse evidence for the nonexistent families, and optionally the
amalgamation sweep that should find exactly these polytopes."""
import argparse
import json
import sys

from rotary_forge.census import Bounds, reproduce_table4


def _ints(s):
    return tuple(int(x) for x in s.split(",") if x)


def main(argv=None):
    ap = argparse.ArgumentParser(description="rebuild the atomic rank-4 table")
    ap.add_argument("--ms", type=_ints, default=(3,))
    ap.add_argument("--alphas", type=_ints, default=(2,))
    ap.add_argument("--betas", type=_ints, default=(5,))
    ap.add_argument("--no-sweep", action="store_true")
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args(argv)

    report = reproduce_table4(Bounds(args.ms, args.alphas, args.betas), sweep=not args.no_sweep)
    for e in report["entries"]:
        flag = "ok" if e["ok"] else "FAIL"
        print(f"row {e['row']:>2} {'dual ' if e['dual'] else ''}{e['family']} {e['params']} |G|={e['order']} {flag}",
              file=sys.stderr)
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if args.output == "-":
        print(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
