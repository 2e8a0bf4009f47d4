#!/usr/bin/env python3
"""Largest component of G(n, 1/n) against n^(2/3), plus the neardense gap trend.

The constant in front of n^(2/3) is not known, so the ratio column is only
meant to stay roughly flat as n grows.  The neardense rows fix p = n^(-1/2)
and report gap / n.
"""

import argparse
import statistics

from rwrandom.experiments import RegimeConfig, critical_ratios, gap_summary, run


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    print("n,median_largest,median_ratio,max_ratio")
    for n in (1_000, 10_000, 100_000):
        recs = run(RegimeConfig("critical", n, c=1.0, samples=args.samples, seed=args.seed,
                                workers=args.workers))
        ratios = critical_ratios(recs)
        print(f"{n},{statistics.median(r.largest_component for r in recs)},"
              f"{statistics.median(ratios):.3f},{max(ratios):.3f}")

    print()
    print("n,p,gap_median,gap_max,gap_median_over_n")
    for n in (9, 12, 15, 18):
        recs = run(RegimeConfig("neardense", n, samples=20, seed=args.seed, workers=args.workers))
        med, mx = gap_summary(recs)
        print(f"{n},{recs[0].p:.4f},{med},{mx},{med / n:.3f}")


if __name__ == "__main__":
    main()
