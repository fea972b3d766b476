#!/usr/bin/env python
"""Recovery quality of the d=19 coherent state versus the number of sampled lines."""
import argparse

import numpy as np

from wigner_cs.experiment import fig1_run
from wigner_cs.solver import COSINE, PIXEL
from wigner_cs.tomography import FAMILY_RANDOM, ROW_RANDOM


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--counts", type=int, nargs="+", default=[95, 190, 285, 342, 380])
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--basis", choices=(PIXEL, COSINE), default=PIXEL)
    parser.add_argument("--mode", choices=(ROW_RANDOM, FAMILY_RANDOM), default=ROW_RANDOM)
    args = parser.parse_args()

    print(f"{'rows':>5} {'median rel l2':>14} {'worst rel l2':>13} {'median jaccard':>15} {'converged':>10}")
    for count in args.counts:
        runs = [fig1_run(seed, count, args.mode, args.basis) for seed in range(args.seeds)]
        rel = [r.metrics.relative_l2 for r in runs]
        jac = [r.metrics.support_jaccard for r in runs]
        conv = sum(r.report.status == "converged" for r in runs)
        print(f"{count:>5} {np.median(rel):>14.4f} {max(rel):>13.4f} {np.median(jac):>15.3f} {conv:>7}/{args.seeds}")


if __name__ == "__main__":
    main()
