#!/usr/bin/env python3
"""Run every G(n, p) regime at desk scale and write one CSV per regime.

    python3 scripts/run_regimes.py --out results/ --seed 1 --workers 2

Prints a one-line summary per regime.  The sizes below are the ones used for
the baseline numbers in the README; pass --quick for a smoke run.
"""

import argparse
import os
import statistics

from rwrandom.experiments import RegimeConfig, gap_summary, run, write_records

FULL = [
    RegimeConfig("dense", 15, p=0.5, samples=200),
    RegimeConfig("neardense", 18, samples=50),
    RegimeConfig("supercritical", 3000, c=5.0, samples=20),
    RegimeConfig("critical", 10_000, c=1.0, samples=50),
    RegimeConfig("subcritical", 100_000, c=0.5, samples=20),
]

QUICK = [
    RegimeConfig("dense", 10, p=0.5, samples=20),
    RegimeConfig("neardense", 12, samples=10),
    RegimeConfig("supercritical", 300, c=3.0, samples=3),
    RegimeConfig("critical", 1000, c=1.0, samples=10),
    RegimeConfig("subcritical", 10_000, c=0.5, samples=5),
]


def summarize(records):
    cfg = records[0]
    med, mx = gap_summary(records)
    parts = [f"{cfg.regime:>13}  n={cfg.n:<7} samples={len(records):<4}"]
    if cfg.regime in ("dense", "neardense"):
        parts.append(f"gap median {med} max {mx}")
    parts.append(f"largest component median {statistics.median(r.largest_component for r in records)}")
    parts.append(f"all simple {sum(r.all_simple for r in records)}/{len(records)}")
    if cfg.certified_lb >= 0:
        parts.append(f"certified lb >= 1 in {sum(r.certified_lb >= 1 for r in records)}")
    return "  ".join(parts)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    os.makedirs(args.out, exist_ok=True)
    for base in QUICK if args.quick else FULL:
        cfg = RegimeConfig(**{**base.__dict__, "seed": args.seed, "workers": args.workers})
        records = run(cfg)
        write_records(records, os.path.join(args.out, f"{cfg.regime}_n{cfg.n}.csv"))
        if records:
            print(summarize(records))


if __name__ == "__main__":
    main()
