"""End-to-end pipeline: state -> truth grid -> sampled line sums -> l1 reconstruction."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .io_metrics import GridMetrics, compare
from .phase_space import DiscreteWigner, odd_dimension, wigner_from_density
from .solver import PIXEL, BregmanConfig, ReconstructionReport, reconstruct
from .states import (
    CoherentStateParams,
    coherent_wigner_closed_form,
    fock_density,
    maximally_mixed,
    random_density,
)
from .tomography import ROW_RANDOM, SensingPlan, build_full_matrix, measure, sample_rows

STATES = ("coherent", "fock", "mixed", "random")

FIG1_D = 19
FIG1_AMPLITUDE = 1.472
FIG1_ROWS = 285


@dataclass(frozen=True)
class StateSpec:
    kind: str = "coherent"
    d: int = FIG1_D
    amplitude: float = FIG1_AMPLITUDE
    phase: float = 0.0
    level: int = 0
    rank: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in STATES:
            raise ValueError(f"unknown state {self.kind!r}; expected one of {STATES}")
        odd_dimension(self.d)

    def describe(self) -> dict:
        out = {"kind": self.kind, "d": self.d}
        if self.kind == "coherent":
            out.update(amplitude=self.amplitude, phase=self.phase)
        elif self.kind == "fock":
            out["level"] = self.level
        elif self.kind == "random":
            out.update(seed=self.seed, rank=self.rank if self.rank is not None else self.d)
        return out


def truth_grid(spec: StateSpec) -> DiscreteWigner:
    if spec.kind == "coherent":
        return coherent_wigner_closed_form(CoherentStateParams(spec.d, spec.amplitude, spec.phase))
    if spec.kind == "fock":
        rho = fock_density(spec.d, spec.level)
    elif spec.kind == "mixed":
        rho = maximally_mixed(spec.d)
    else:
        rho = random_density(spec.d, spec.seed, spec.rank)
    return wigner_from_density(rho)


@dataclass
class Run:
    truth: DiscreteWigner
    report: ReconstructionReport
    metrics: GridMetrics


def run_reconstruction(
    truth: DiscreteWigner,
    plan: SensingPlan,
    basis: str = PIXEL,
    cfg: BregmanConfig | None = None,
) -> Run:
    full = build_full_matrix(truth.d)
    sensing = sample_rows(full, plan)
    y = measure(truth, sensing)
    report = reconstruct(y, sensing, basis, cfg, plan=plan)
    report.metrics = compare(truth, report.w_hat)
    return Run(truth, report, report.metrics)


def fig1_run(
    seed: int,
    count: int = FIG1_ROWS,
    mode: str = ROW_RANDOM,
    basis: str = PIXEL,
    cfg: BregmanConfig | None = None,
    phase: float = 0.0,
) -> Run:
    """d = 19 coherent state with |alpha| = 1.472, reconstructed from ``count`` sampled lines."""
    truth = truth_grid(StateSpec("coherent", FIG1_D, FIG1_AMPLITUDE, phase))
    return run_reconstruction(truth, SensingPlan(FIG1_D, count, seed, mode), basis, cfg)


def planted_sparse_grid(d: int, k: int, seed: int) -> DiscreteWigner:
    """k nonzero pixels at seeded positions with standard normal values."""
    rng = np.random.default_rng(seed)
    x = np.zeros(d * d)
    support = rng.choice(d * d, size=k, replace=False)
    x[support] = rng.standard_normal(k)
    return DiscreteWigner.from_vector(x)


def gaussian_sparse_instance(seed: int, m: int = 8, n: int = 12, k: int = 2):
    """Seeded (A, x) with Gaussian A scaled by 1/sqrt(m) and k nonzeros of magnitude >= 1."""
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((m, n)) / np.sqrt(m)
    x = np.zeros(n)
    support = rng.choice(n, size=k, replace=False)
    x[support] = rng.choice([-1.0, 1.0], size=k) * (1.0 + np.abs(rng.standard_normal(k)))
    return A, x
