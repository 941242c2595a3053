#!/usr/bin/env python3
"""Wall-clock cost of building and verifying each catalogue family over its grid."""
import argparse
import time

from rotary_forge.catalogue import FamilyId, grid, presentation_for
from rotary_forge.rotation import chirality_verdict, is_tight, make_rotation_group


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("families", nargs="*", default=[f.value for f in FamilyId])
    ap.add_argument("--ms", default="3,5")
    ap.add_argument("--alphas", default="2,3")
    ap.add_argument("--betas", default="5,6")
    args = ap.parse_args(argv)
    ms = tuple(int(x) for x in args.ms.split(","))
    alphas = tuple(int(x) for x in args.alphas.split(","))
    betas = tuple(int(x) for x in args.betas.split(","))

    for name in args.families:
        fam = FamilyId(name)
        for prm in grid(fam, ms=ms, alphas=alphas, betas=betas):
            t0 = time.perf_counter()
            try:
                R = make_rotation_group(presentation_for(fam, prm))
            except Exception as exc:  # collapsing families end here
                print(f"{fam.value:<10} {prm.label():<28} {type(exc).__name__} {time.perf_counter() - t0:8.2f}s")
                continue
            t1 = time.perf_counter()
            tight = is_tight(R).tight
            chiral = chirality_verdict(R).chiral
            t2 = time.perf_counter()
            print(f"{fam.value:<10} {prm.label():<28} |G|={R.order():<8} tight={tight!s:<5} chiral={chiral!s:<5} "
                  f"build {t1 - t0:7.2f}s verify {t2 - t1:7.2f}s")


if __name__ == "__main__":
    main()
