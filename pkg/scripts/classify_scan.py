#!/usr/bin/env python3
"""Classify energies for the almost-Mathieu potential across the spectrum.

Sweeps a grid of energies, prints the stratum of each (uniformly
hyperbolic / supercritical / subcritical / critical) with the exponent,
acceleration, and quantization defect, and marks stratum boundaries.

Usage: python3 scripts/classify_scan.py [--lam 2.0] [--e-pts 15]
"""

import argparse
import sys

import numpy as np

from cocyclelab import scan
from cocyclelab.oracles import GOLDEN
from cocyclelab.torusfn import cosine


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lam", type=float, default=2.0, help="coupling strength")
    ap.add_argument("--e-min", type=float, default=-6.5)
    ap.add_argument("--e-max", type=float, default=6.5)
    ap.add_argument("--e-pts", type=int, default=15)
    ap.add_argument("--q-max", type=int, default=1000)
    args = ap.parse_args()

    v = cosine(args.lam)
    grid = np.linspace(args.e_min, args.e_max, args.e_pts)
    rows = scan(v, GOLDEN, grid, q_max=args.q_max)
    print(f"{'E':>8} {'L':>10} {'omega':>6} {'defect':>9} {'class':>15} {'edge':>5}")
    for r in rows:
        print(
            f"{r.E:8.3f} {r.L:10.5f} {r.omega:6d} {r.defect:9.2e} "
            f"{r.tag.value:>15} {'*' if r.boundary else '':>5}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
