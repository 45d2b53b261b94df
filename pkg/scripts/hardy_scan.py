"""Weighted Hardy membership of kappa^p over a grid of (p, a).

Compares the slope-based verdict with the criterion p < |a| + 1/2 and marks
parameters inside the undecidable band around the critical line.
"""

import argparse

import numpy as np

from schroeder.spectral import WeightedHardyParams, hardy_membership, koenigs_for_hardy
from schroeder.symbol import RationalMap


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--K", type=int, default=4096)
    ap.add_argument("--powers", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--a", type=float, nargs="+",
                    default=list(np.round(np.arange(-2.5, 0.01, 0.25), 2)))
    args = ap.parse_args()

    kd = koenigs_for_hardy(RationalMap([0, 1], [2, -1]), K=args.K, max_power=max(args.powers))
    print(f"{'p':>2} {'a':>6} {'slope':>8} {'member':>6} {'expected':>8} note")
    for p in args.powers:
        for a in args.a:
            r = hardy_membership(kd, p, WeightedHardyParams(a, args.K))
            expected = p < abs(a) + 0.5
            band = abs(p - (abs(a) + 0.5)) <= 0.1 + 1e-12
            note = "critical band" if band else ("" if r["member"] == expected else "MISMATCH")
            print(f"{p:>2} {a:>6.2f} {r['growth_exponent']:>8.3f} {str(r['member']):>6} "
                  f"{str(expected):>8} {note}")


if __name__ == "__main__":
    main()
