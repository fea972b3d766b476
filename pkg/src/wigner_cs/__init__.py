"""Compressed-sensing reconstruction of discrete Wigner functions."""
from .phase_space import (
    DensityMatrix,
    DiscreteWigner,
    density_from_wigner,
    number_marginal,
    wigner_from_density,
)
from .solver import BregmanConfig, SparseBasis, linearized_bregman, reconstruct
from .states import (
    CoherentStateParams,
    coherent_density,
    coherent_wigner_closed_form,
    fock_density,
    random_density,
)
from .tomography import SensingPlan, build_full_matrix, measure, sample_rows

__all__ = [
    "BregmanConfig",
    "CoherentStateParams",
    "DensityMatrix",
    "DiscreteWigner",
    "SensingPlan",
    "SparseBasis",
    "build_full_matrix",
    "coherent_density",
    "coherent_wigner_closed_form",
    "density_from_wigner",
    "fock_density",
    "linearized_bregman",
    "measure",
    "number_marginal",
    "random_density",
    "reconstruct",
    "sample_rows",
    "wigner_from_density",
]
