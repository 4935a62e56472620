#!/usr/bin/env python3
"""Fine vs coarse class counts across the built-in corpus.

Records, per datum, how many orbits the plain action has versus how many
coarse classes, flagging where the coarse relation is strictly coarser.
"""

from __future__ import annotations

import argparse

from zipcalc import (
    WittZipConfig,
    build_forest,
    build_small_zoo,
    build_witt_zip,
    fine_orbits,
    refine_to_stationary,
    zip_classes,
)


def survey(name, datum):
    fine = fine_orbits(datum)
    coarse = zip_classes(datum)
    trace = refine_to_stationary(datum)
    forest = build_forest(datum)
    strict = "strict" if fine.class_count > coarse.class_count else "equal"
    print(
        f"{name:22s} |E|={datum.E.order:<6d} |G|={datum.G.order:<5d} "
        f"fine={fine.class_count:<4d} coarse={coarse.class_count:<4d} ({strict})  "
        f"|E_inf|={trace.e_infinity.order:<6d} |G_inf|={trace.g_infinity.order:<5d} "
        f"leaves={len(forest.leaves)}"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--witt", action="store_true", help="include the Witt models p=2, n=2..3")
    args = parser.parse_args()
    for name, datum in build_small_zoo().items():
        survey(name, datum)
    if args.witt:
        for p, n in ((2, 2), (2, 3)):
            datum, _ = build_witt_zip(WittZipConfig(p, n))
            survey(f"witt-p{p}-n{n}", datum)


if __name__ == "__main__":
    main()
