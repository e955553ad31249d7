"""Locate the dephasing thresholds where linear cluster states lose NPT cuts.

Unlike GHZ and W states, cluster chains become PPT across individual cuts at
nonzero homogeneous gamma. This script bisects the oracle for every cut of
chains up to --max-n and prints the thresholds; for the 2- and 3-qubit chains
it also checks them against the closed forms (sqrt(2)-1, and the root of
g^3 + g^2 + 3g - 1 for the middle-qubit cut).

Usage:
    python3 scripts/cluster_thresholds.py [--max-n 5] [--out thresholds.csv]
"""

import argparse
import csv
import sys

import numpy as np

from decohere import (
    BracketError,
    Family,
    StateFamily,
    critical_gamma,
    enumerate_cuts,
)

PAIR_THRESHOLD = np.sqrt(2.0) - 1.0


def chain_thresholds(n):
    family = StateFamily(Family.CLUSTER, n)
    out = []
    for cut in enumerate_cuts(n):
        try:
            gamma = critical_gamma(family, cut, 0.05, 0.999)
        except BracketError as exc:
            # no transition inside the bracket; report and move on
            print(f"  n={n} cut {cut.human()}: {exc}", file=sys.stderr)
            continue
        out.append((cut, gamma))
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=5, help="longest chain")
    parser.add_argument("--out", help="write cut/threshold rows to this CSV file")
    args = parser.parse_args(argv)
    if args.max_n < 2:
        parser.error("--max-n must be at least 2")

    rows = []
    for n in range(2, args.max_n + 1):
        print(f"chain of {n} qubits:")
        thresholds = chain_thresholds(n)
        for cut, gamma in thresholds:
            print(f"  cut {cut.human():>12}  critical gamma = {gamma:.9f}")
            rows.append((n, cut.cli_bitmask, cut.human(), gamma))
        last = max(gamma for _, gamma in thresholds)
        print(f"  all cuts PPT below gamma = {min(g for _, g in thresholds):.9f}, "
              f"all NPT above {last:.9f}")

        if n == 2:
            gap = abs(thresholds[0][1] - PAIR_THRESHOLD)
            print(f"  closed form sqrt(2)-1: off by {gap:.2e}")
        if n == 3:
            middle = next(g for c, g in thresholds if c.human() == "1,3|2")
            residual = middle**3 + middle**2 + 3 * middle - 1.0
            print(f"  middle-qubit cut cubic residual: {residual:.2e}")

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["n_qubits", "cut_bitmask", "cut_human", "critical_gamma"])
            for n, mask, human, gamma in rows:
                writer.writerow([n, mask, human, repr(float(gamma))])
        print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
