"""Discrete Wigner transform on the odd-dimensional phase space Z_d x Z_d.

The grid is indexed by ``(m, mu)``: ``m`` is the number (or spin) label and
``mu`` the quantized phase label. All index arithmetic is taken mod ``d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
IMAG_TOL = 1e-12


def odd_dimension(d) -> int:
    """Validate a Hilbert-space dimension: an odd integer >= 3."""
    if isinstance(d, bool) or int(d) != d:
        raise ValueError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    if d < 3 or d % 2 == 0:
        raise ValueError(f"dimension must be odd and >= 3, got {d}")
    return d


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace operator in the Fock basis {|0>, ..., |d-1>}.

    Positivity is not enforced here; see :meth:`validate_psd`.
    """

    entries: np.ndarray

    def __post_init__(self):
        rho = np.array(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {rho.shape}")
        odd_dimension(rho.shape[0])
        if not np.all(np.isfinite(rho)):
            raise ValueError("density matrix has non-finite entries")
        herm = np.abs(rho - rho.conj().T).max()
        if herm > HERMITIAN_TOL:
            raise ValueError(f"density matrix is not Hermitian (residue {herm:.3e})")
        tr = np.trace(rho)
        if abs(tr - 1) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {tr:.15g}, expected 1")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    def validate_psd(self, tol: float = PSD_TOL) -> None:
        """Raise ``ValueError`` if the smallest eigenvalue is below ``-tol``."""
        lam = np.linalg.eigvalsh(self.entries).min()
        if lam < -tol:
            raise ValueError(f"density matrix is not positive semidefinite (min eigenvalue {lam:.3e})")

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))


@dataclass(frozen=True, eq=False)
class DiscreteWigner:
    """Real d x d quasi-probability grid, ``values[m, mu]``."""

    values: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.values)
        if np.iscomplexobj(w):
            raise TypeError("Wigner grid must be real")
        w = np.array(w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"Wigner grid must be square, got shape {w.shape}")
        odd_dimension(w.shape[0])
        if not np.all(np.isfinite(w)):
            raise ValueError("Wigner grid has non-finite entries")
        w.setflags(write=False)
        object.__setattr__(self, "values", w)

    @property
    def d(self) -> int:
        return self.values.shape[0]

    def vector(self) -> np.ndarray:
        """Raster-ordered copy: index ``m * d + mu``."""
        return self.values.ravel().copy()

    @classmethod
    def from_vector(cls, x) -> DiscreteWigner:
        x = np.asarray(x, dtype=float)
        d = int(round(np.sqrt(x.size)))
        if d * d != x.size:
            raise ValueError(f"vector length {x.size} is not a square")
        return cls(x.reshape(d, d))


def _phase_kernel(d: int, sign: int) -> np.ndarray:
    # E[n, mu] = exp(sign * 4 pi i mu n / d)
    n = np.arange(d)
    return np.exp(sign * 4j * np.pi * np.outer(n, n) / d)


def _diagonal_indices(d: int):
    m = np.arange(d)[:, None]
    n = np.arange(d)[None, :]
    return (m - n) % d, (m + n) % d


def wigner_from_density(rho: DensityMatrix) -> DiscreteWigner:
    """W(m, mu) = (1/d) sum_n exp(-4 pi i mu n / d) <m-n| rho |m+n>."""
    d = rho.d
    a, b = _diagonal_indices(d)
    w = rho.entries[a, b] @ _phase_kernel(d, -1) / d
    residue = np.abs(w.imag).max()
    if residue > IMAG_TOL:
        raise ValueError(f"Wigner transform has imaginary residue {residue:.3e}")
    return DiscreteWigner(w.real)


def density_from_wigner(w: DiscreteWigner) -> DensityMatrix:
    """Inverse transform; 2 is invertible mod odd d so every (a, b) is reached once."""
    d = w.d
    a, b = _diagonal_indices(d)
    rho = np.empty((d, d), dtype=complex)
    rho[a, b] = w.values @ _phase_kernel(d, +1)
    return DensityMatrix(rho)


def number_marginal(w: DiscreteWigner) -> np.ndarray:
    """Sum over the phase label; reproduces diag(rho)."""
    return w.values.sum(axis=1)


def write_csv(w: DiscreteWigner, path) -> None:
    """First line holds d, then d comma-separated rows (m) of d values (mu)."""
    lines = [str(w.d)]
    lines += [",".join(f"{v:.17g}" for v in row) for row in w.values]
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path) -> DiscreteWigner:
    text = Path(path).read_text().split()
    if not text:
        raise ValueError(f"{path}: empty grid file")
    d = int(text[0])
    rows = [[float(v) for v in line.split(",")] for line in text[1:]]
    if len(rows) != d or any(len(r) != d for r in rows):
        raise ValueError(f"{path}: expected {d} rows of {d} values")
    return DiscreteWigner(np.array(rows))
