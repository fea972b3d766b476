"""Reference states and the closed-form Wigner function of the finite-dimensional coherent state.

The finite-dimensional coherent state ``||alpha| e^{i phi}>_s`` lives in an
``(s + 1)``-level space (``s = d - 1``) and is produced by the truncated
displacement operator ``exp(alpha a_s^+ - alpha^* a_s)`` acting on ``|0>``.
Its Fock amplitudes are sums over the zeros of ``He_{s+1}``, which is where
the Hermite machinery below comes in.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .phase_space import DensityMatrix, DiscreteWigner, odd_dimension

CLOSED_FORM_IMAG_TOL = 1e-8


@dataclass(frozen=True)
class CoherentStateParams:
    d: int
    amplitude: float
    phase: float = 0.0

    def __post_init__(self):
        odd_dimension(self.d)
        if not math.isfinite(self.amplitude) or self.amplitude < 0:
            raise ValueError(f"amplitude must be finite and >= 0, got {self.amplitude}")
        if not math.isfinite(self.phase):
            raise ValueError(f"phase must be finite, got {self.phase}")

    @property
    def s(self) -> int:
        return self.d - 1

    @property
    def alpha(self) -> complex:
        return self.amplitude * np.exp(1j * self.phase)


def hermite_he(n: int, x):
    """Probabilists' Hermite polynomial He_n(x) by the three-term recurrence.

    Works elementwise on arrays.
    """
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    prev, cur = np.ones_like(x), x
    if n == 0:
        return prev if prev.ndim else float(prev)
    for k in range(1, n):
        prev, cur = cur, x * cur - k * prev
    return cur if cur.ndim else float(cur)


def hermite_table(n_max: int, x) -> np.ndarray:
    """Rows He_0(x), ..., He_{n_max}(x)."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = x
    for k in range(1, n_max):
        out[k + 1] = x * out[k] - k * out[k - 1]
    return out


def hermite_roots(order: int) -> np.ndarray:
    """Zeros of He_order, ascending.

    Eigenvalues of the symmetric tridiagonal Jacobi matrix with zero diagonal
    and off-diagonal sqrt(1), ..., sqrt(order - 1).
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    off = np.sqrt(np.arange(1, order, dtype=float))
    jacobi = np.diag(off, 1) + np.diag(off, -1)
    return np.linalg.eigvalsh(jacobi)


def root_residuals(order: int, roots) -> np.ndarray:
    """Backward error of each root: the Newton step |He_n / He_n'| relative to max(1, |x_k|).

    Uses He_n' = n He_{n-1}; nonzero at simple roots.
    """
    roots = np.asarray(roots, dtype=float)
    table = hermite_table(order, roots)
    slope = order * np.abs(table[order - 1])
    return np.abs(table[order]) / (slope * np.maximum(1.0, np.abs(roots)))


@dataclass(frozen=True, eq=False)
class HermiteBasis:
    """Zeros of He_{s+1} and the table He_j(x_k), j = 0..s+1."""

    s: int
    roots: np.ndarray
    values: np.ndarray

    @property
    def order(self) -> int:
        return self.s + 1


@lru_cache(maxsize=None)
def hermite_basis(s: int) -> HermiteBasis:
    roots = hermite_roots(s + 1)
    values = hermite_table(s + 1, roots)
    roots.setflags(write=False)
    values.setflags(write=False)
    return HermiteBasis(s, roots, values)


def _root_sums(basis: HermiteBasis, amplitude: float) -> np.ndarray:
    """c_j = sum_p exp(i x_p |alpha|) He_j(x_p) / He_s(x_p)^2, j = 0..s.

    The quotient is formed in log-magnitude so large-order Hermite values never get squared directly.
    """
    s = basis.s
    he = basis.values[: s + 1]
    with np.errstate(divide="ignore"):
        log_mag = np.log(np.abs(he)) - 2.0 * np.log(np.abs(basis.values[s]))
    ratio = np.sign(he) * np.exp(log_mag)
    return ratio @ np.exp(1j * basis.roots * amplitude)


def g_kernel(basis: HermiteBasis, amplitude: float, M: int) -> np.ndarray:
    """Table G[eta, k], eta in {0, 1}, k in 0..s, for the grid rows with 2m = M (mod d).

    G_{eta k} = (s!)^2 / (s+1)^3 sum_{p,q} exp(i (x_q - x_p)|alpha|)
                He_k(x_p) He_{M-k+eta(s+1)}(x_q) / [He_s(x_p) He_s(x_q)]^2.

    The double sum factorizes into conj(c_k) * c_j. Entries whose Hermite index
    would leave 0..s are zero (they never enter the Wigner sum).
    """
    s = basis.s
    c = _root_sums(basis, amplitude)
    log_pref = 2.0 * gammaln(s + 1) - 3.0 * np.log(s + 1)
    g = np.zeros((2, s + 1), dtype=complex)
    for eta in (0, 1):
        for k in range(s + 1):
            j = M - k + eta * (s + 1)
            if 0 <= j <= s:
                g[eta, k] = np.exp(log_pref) * np.conj(c[k]) * c[j]
    return g


def coherent_wigner_closed_form(params: CoherentStateParams) -> DiscreteWigner:
    """Closed-form Wigner grid of the finite-dimensional coherent state.

    For each row m, with M = 2m mod d and theta = -2 pi mu / d - phi + pi / 2,

        W(m, mu) = sum_{k=M+1}^{s} exp[i(2k - M - s - 1) theta] G_{1k} / [k! (M - k + s + 1)!]^{1/2}
                 + sum_{k=0}^{M}   exp[i(2k - M) theta]         G_{0k} / [k! (M - k)!]^{1/2}.

    Raises ``ArithmeticError`` if the imaginary residue exceeds 1e-8.
    """
    d, s = params.d, params.s
    basis = hermite_basis(s)
    c = _root_sums(basis, params.amplitude)
    log_pref = 2.0 * gammaln(s + 1) - 3.0 * np.log(s + 1)
    lfact = gammaln(np.arange(d) + 1.0)
    # mu enters with a minus sign so the grid shares wigner_from_density's phase orientation
    theta = -2.0 * np.pi * np.arange(d) / d - params.phase + np.pi / 2
    w = np.zeros((d, d), dtype=complex)
    for m in range(d):
        M = (2 * m) % d
        k = np.arange(s + 1)
        # partner Fock index j with k + j = M (eta = 0) or M + s + 1 (eta = 1)
        eta = (k > M).astype(int)
        j = M - k + eta * (s + 1)
        winding = 2 * k - M - eta * (s + 1)
        g = np.exp(log_pref) * np.conj(c[k]) * c[j]
        weight = np.exp(-0.5 * (lfact[k] + lfact[j]))
        w[m] = np.exp(1j * np.outer(theta, winding)) @ (weight * g)
    residue = np.abs(w.imag).max()
    if residue > CLOSED_FORM_IMAG_TOL:
        raise ArithmeticError(f"closed-form Wigner grid has imaginary residue {residue:.3e}")
    return DiscreteWigner(w.real)


def annihilation(d: int) -> np.ndarray:
    """Truncated annihilation operator, a|n> = sqrt(n)|n-1>."""
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1)


def coherent_ket(params: CoherentStateParams) -> np.ndarray:
    a = annihilation(params.d)
    alpha = params.alpha
    generator = alpha * a.conj().T - np.conj(alpha) * a
    # generator is anti-Hermitian, so i*generator is Hermitian: exp(G) = V exp(-i lam) V^+
    lam, vecs = np.linalg.eigh(1j * generator)
    unitary = (vecs * np.exp(-1j * lam)) @ vecs.conj().T
    psi = unitary[:, 0]
    return psi / np.linalg.norm(psi)


def _pure(psi) -> DensityMatrix:
    rho = np.outer(psi, psi.conj())
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real)


def coherent_density(params: CoherentStateParams) -> DensityMatrix:
    """Projector on the truncated-displacement coherent state."""
    return _pure(coherent_ket(params))


def truncated_coherent_density(params: CoherentStateParams) -> DensityMatrix:
    """Infinite-dimensional coherent state cut at level s and renormalized.

    Kept only for comparison with :func:`coherent_density`; it is a different state.
    """
    n = np.arange(params.d)
    log_amp = -0.5 * gammaln(n + 1.0)
    if params.amplitude > 0:
        log_amp = log_amp + n * np.log(params.amplitude)
    else:
        log_amp = np.where(n == 0, 0.0, -np.inf)
    psi = np.exp(log_amp - log_amp.max()) * np.exp(1j * n * params.phase)
    return _pure(psi / np.linalg.norm(psi))


def fock_density(d: int, level: int) -> DensityMatrix:
    d = odd_dimension(d)
    if not 0 <= level < d:
        raise ValueError(f"Fock level must be in [0, {d}), got {level}")
    rho = np.zeros((d, d))
    rho[level, level] = 1.0
    return DensityMatrix(rho)


def maximally_mixed(d: int) -> DensityMatrix:
    d = odd_dimension(d)
    return DensityMatrix(np.eye(d) / d)


def random_density(d: int, seed: int, rank: int | None = None) -> DensityMatrix:
    """G G^+ / tr(G G^+) with G a d x rank complex Gaussian matrix from ``default_rng(seed)``."""
    d = odd_dimension(d)
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real)
