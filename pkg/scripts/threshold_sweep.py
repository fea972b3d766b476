#!/usr/bin/env python
"""Effect of the shrinkage scale (mu = scale * ||A^T y||_inf) on sparse and dense recovery.

Small scales drive the Bregman fixed point toward the minimum-l2 solution;
large ones slow convergence on dense grids.
"""
import argparse

import numpy as np

from wigner_cs.experiment import fig1_run, planted_sparse_grid, run_reconstruction
from wigner_cs.solver import BregmanConfig
from wigner_cs.tomography import SensingPlan


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scales", type=float, nargs="+", default=[0.005, 0.1, 0.5, 1.0, 1.5, 2.0, 5.0])
    parser.add_argument("--seeds", type=int, default=10)
    args = parser.parse_args()

    print(f"{'scale':>6} {'sparse ok':>10} {'full-data rel l2':>17} {'fig1 median rel l2':>19}")
    for scale in args.scales:
        cfg = BregmanConfig(mu_scale=scale)
        ok = sum(
            run_reconstruction(planted_sparse_grid(19, 8, s), SensingPlan(19, 285, s), cfg=cfg).metrics.relative_l2
            <= 1e-3
            for s in range(args.seeds)
        )
        full = fig1_run(0, 380, cfg=cfg).metrics.relative_l2
        fig = np.median([fig1_run(s, cfg=cfg).metrics.relative_l2 for s in range(args.seeds)])
        print(f"{scale:>6} {ok:>7}/{args.seeds} {full:>17.2e} {fig:>19.4f}")


if __name__ == "__main__":
    main()
