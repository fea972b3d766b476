#!/usr/bin/env python
"""Exact-recovery rate of planted k-sparse d=19 grids from a fixed number of lines."""
import argparse

from wigner_cs.experiment import planted_sparse_grid, run_reconstruction
from wigner_cs.tomography import SensingPlan


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=285)
    parser.add_argument("--sparsity", type=int, nargs="+", default=[4, 8, 16, 32, 48, 64])
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--tol", type=float, default=1e-3, help="relative l2 counted as recovered")
    args = parser.parse_args()

    print(f"{'k':>4} {'recovered':>10}")
    for k in args.sparsity:
        hits = 0
        for seed in range(args.seeds):
            run = run_reconstruction(planted_sparse_grid(19, k, seed), SensingPlan(19, args.rows, seed))
            hits += run.metrics.relative_l2 <= args.tol
        print(f"{k:>4} {hits:>7}/{args.seeds}")


if __name__ == "__main__":
    main()
