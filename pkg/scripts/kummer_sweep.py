#!/usr/bin/env python3
"""Sweep weight pairs and report which congruences hold at which modulus.

Usage: python scripts/kummer_sweep.py [--p 5] [--bound 120] [--max-m 2]
"""

import argparse

from eismeasure.fields import FieldData
from eismeasure.measure import kummer_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--bound", type=int, default=120)
    ap.add_argument("--max-m", type=int, default=2, dest="max_m")
    ap.add_argument("--k-min", type=int, default=2, dest="k_min")
    ap.add_argument("--k-max", type=int, default=12, dest="k_max")
    args = ap.parse_args()

    field = FieldData(p=args.p, mode="symplectic")
    step = args.p - 1
    print(f"p={args.p}, bound={args.bound}")
    print(f"{'k':>4} {'k2':>6} {'m':>3} {'mod':>6} {'passed':>7} {'checked':>8}")
    for k in range(args.k_min, args.k_max + 1):
        for m in range(args.max_m + 1):
            k2 = k + step * args.p ** m
            rep = kummer_check(field, k, k2, m, args.bound)
            print(f"{k:>4} {k2:>6} {m:>3} {args.p}^{rep.modulus_exponent:<3}"
                  f" {str(rep.passed):>7} {rep.checked:>8}")
            # probe one level past the guarantee; failures here are expected
            probe = kummer_check(field, k, k2, m, args.bound,
                                 modulus_exponent=m + 2)
            if probe.passed:
                print(f"{'':>15} note: still congruent mod "
                      f"{args.p}^{m + 2}")


if __name__ == "__main__":
    main()
