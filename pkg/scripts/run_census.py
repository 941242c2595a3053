#!/usr/bin/env python3
"""Census of tight rotary polyhedra of every type {p, q} with pq <= bound.

Writes one JSON document with the records per type and the catalogue agreement,
and prints a one-line summary per type that has chiral records.
"""
import argparse
import json
import sys
import time

from rotary_forge.census import CensusConfig, catalogue_agreement, census_all


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=432)
    ap.add_argument("--workers", type=int, default=None, help="defaults to ROTARY_FORGE_THREADS")
    ap.add_argument("--method", choices=["lift", "scan"], default="lift")
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args(argv)

    kw = {"bound": args.bound, "method": args.method}
    if args.workers is not None:
        kw["workers"] = args.workers
    cfg = CensusConfig.from_env(**kw)
    t0 = time.perf_counter()
    results = census_all(cfg)
    elapsed = time.perf_counter() - t0
    agreement = catalogue_agreement(results, cfg.bound)

    for (p, q), res in results.items():
        if res.chiral:
            print(f"{{{p},{q}}}: {len(res.chiral)} chiral, {len(res.regular)} regular", file=sys.stderr)
    print(f"{len(results)} types in {elapsed:.1f}s", file=sys.stderr)

    doc = {
        "bound": cfg.bound,
        "method": cfg.method,
        "seconds": round(elapsed, 3),
        "types": [dict(res.summary(), records=[r.to_json() for r in res.records]) for res in results.values()],
        "agreement": agreement,
    }
    text = json.dumps(doc, indent=2, sort_keys=True, default=str)
    if args.output == "-":
        print(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")


if __name__ == "__main__":
    main()
