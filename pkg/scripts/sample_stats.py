#!/usr/bin/env python3
"""Loop-count distributions per triangulation: exhaustive in degree 6,
sampled in degree 7 (the full degree-7 class space has 2^33 members)."""

import argparse

from tcurves.census import exhaustive, sample


def show(hist) -> None:
    print(f"\n{hist.triangulation} (degree {hist.degree}, "
          f"{'sampled n=' + str(hist.total) if hist.sampled else 'exhaustive'})")
    for k in sorted(hist.loop_hist):
        frac = hist.loop_hist[k] / hist.total
        bar = "#" * round(60 * frac)
        print(f"  {k:2d} {frac:8.4%} {bar}")
    print(f"  mean loops: {hist.mean_loops:.4f}")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--skip-exhaustive", action="store_true")
    args = ap.parse_args()

    for key in ("bat", "moth"):
        if args.skip_exhaustive:
            show(sample(6, key, args.samples, args.seed))
        else:
            show(exhaustive(6, key))
    for key in ("radiant", "split_radiant", "frayed_radiant", "honeycomb7"):
        show(sample(7, key, args.samples, args.seed))


if __name__ == "__main__":
    main()
