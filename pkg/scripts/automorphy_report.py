#!/usr/bin/env python3
"""Residual report for the factor-of-automorphy identities.

Runs the numeric selftest over a grid of ranks and weights and prints the
worst relative residual per configuration.

Usage: python scripts/automorphy_report.py [--cases 500] [--seed 0]
"""

import argparse

from eismeasure.automorphy import selftest


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cases", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>3} {'k':>3} {'nu':>3} {'cocycle':>12} {'section':>12}")
    for n in (1, 2, 3):
        for k, nu in ((4, 0), (4, 1), (6, -1)):
            worst = selftest(n, args.cases, args.seed, k=k, nu=nu)
            print(f"{n:>3} {k:>3} {nu:>3} {worst['cocycle']:>12.2e}"
                  f" {worst['section']:>12.2e}")


if __name__ == "__main__":
    main()
