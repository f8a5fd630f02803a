#!/usr/bin/env python3
"""Sweep ring bounds over all catalog surfaces and tabulate both modulus routes.

Usage: python3 scripts/modulus_sweep.py [--ratios 1.5,2,e,4,8] [--mc-samples N]
"""

import argparse
import math
import time

from heisring import modulus as md
from heisring.profiles import CATALOG_NAMES, catalog


def parse_ratios(text):
    out = []
    for item in text.split(","):
        out.append(math.e if item.strip() == "e" else float(item))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ratios", default="1.5,2,e,4,8", type=parse_ratios)
    ap.add_argument("--mc-samples", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'surface':<16}{'b/a':>8}{'analytic':>14}{'quadrature':>14}"
          f"{'rel err':>11}{'monte carlo':>13}{'mc sigma':>10}{'time':>8}")
    for name in CATALOG_NAMES:
        for ratio in args.ratios:
            t0 = time.perf_counter()
            ring = md.make_ring(catalog(name, 1.0), 1.0, ratio)
            analytic = md.analytic_modulus(1.0, ratio)
            numeric = md.numeric_modulus(ring)
            mc, stderr = md.mc_modulus(ring, n=args.mc_samples, seed=args.seed)
            dt = time.perf_counter() - t0
            print(f"{name:<16}{ratio:>8.3f}{analytic:>14.6f}{numeric:>14.6f}"
                  f"{abs(numeric - analytic) / analytic:>11.2e}"
                  f"{mc:>13.4f}{stderr:>10.4f}{dt:>7.1f}s")


if __name__ == "__main__":
    main()
