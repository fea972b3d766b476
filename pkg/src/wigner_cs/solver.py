"""l1 recovery of Wigner grids from line sums.

Solves ``min ||x'||_1  s.t.  y = Phi Psi x'`` with the linearized Bregman
iteration, where ``Phi`` is the sensing matrix and ``Psi`` an orthonormal
synthesis basis (pixel identity or type-II DCT over the raster vector).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.fft
import scipy.linalg
from scipy.sparse.linalg import LinearOperator, aslinearoperator

from .phase_space import DiscreteWigner
from .tomography import MeasurementVector, SensingMatrix, SensingPlan

PIXEL = "pixel"
COSINE = "cosine"

CONVERGED = "converged"
MAX_ITERS = "max_iters"


class NonFiniteError(ArithmeticError):
    def __init__(self, iteration: int):
        super().__init__(f"linearized Bregman produced non-finite values at iteration {iteration}")
        self.iteration = iteration


class RankDeficientError(np.linalg.LinAlgError):
    def __init__(self, rank: int, columns: int):
        super().__init__(f"matrix has numerical rank {rank} < {columns} columns")
        self.rank = rank


class NoFeasibleSparseSolution(ValueError):
    pass


@dataclass(frozen=True)
class SparseBasis:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in (PIXEL, COSINE):
            raise ValueError(f"unknown basis {self.kind!r}")

    def synthesize(self, coeffs):
        """Psi @ coeffs."""
        if self.kind == PIXEL:
            return np.asarray(coeffs, dtype=float)
        return scipy.fft.idct(coeffs, type=2, norm="ortho")

    def analyze(self, x):
        """Psi^T @ x."""
        if self.kind == PIXEL:
            return np.asarray(x, dtype=float)
        return scipy.fft.dct(x, type=2, norm="ortho")


def shrink(x, t):
    """Soft threshold sign(x) * max(|x| - t, 0), elementwise."""
    if t <= 0:
        raise ValueError(f"threshold must be positive, got {t}")
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def spectral_norm_sq(A, tol: float = 1e-6, max_iters: int = 10_000, seed: int = 0) -> float:
    """Largest eigenvalue of A^T A by power iteration from a seeded start vector."""
    op = aslinearoperator(A)
    v = np.random.default_rng(seed).standard_normal(op.shape[1])
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(max_iters):
        w = op.rmatvec(op.matvec(v))
        new = float(np.linalg.norm(w))
        if new == 0.0:
            raise ValueError("matrix annihilates the start vector; is it zero?")
        v = w / new
        if abs(new - est) <= tol * new:
            return new
        est = new
    raise ArithmeticError(f"power iteration did not converge in {max_iters} iterations")


@dataclass(frozen=True)
class BregmanConfig:
    """Linearized Bregman settings.

    ``None`` for ``mu_threshold`` or ``delta_step`` means "derive from the
    problem": ``mu = mu_scale * ||A^T y||_inf`` and
    ``delta = step_scale / (1.01 * ||A||^2)``.
    """

    mu_threshold: float | None = None
    delta_step: float | None = None
    max_iters: int = 20_000
    residual_tol: float = 1e-6
    mu_scale: float = 1.5
    step_scale: float = 1.8

    def __post_init__(self):
        for name in ("mu_threshold", "delta_step"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if not self.residual_tol > 0 or not self.mu_scale > 0:
            raise ValueError("residual_tol and mu_scale must be positive")
        if not 0 < self.step_scale < 2:
            raise ValueError(f"step_scale must lie in (0, 2), got {self.step_scale}")

    def resolve(self, A, y) -> BregmanConfig:
        """Fill in data-dependent parameters."""
        op = aslinearoperator(A)
        mu, delta = self.mu_threshold, self.delta_step
        if mu is None:
            scale = float(np.abs(op.rmatvec(np.asarray(y, dtype=float))).max())
            mu = self.mu_scale * scale if scale > 0 else 1.0
        if delta is None:
            delta = self.step_scale / (1.01 * spectral_norm_sq(op))
        return replace(self, mu_threshold=mu, delta_step=delta)


@dataclass
class BregmanResult:
    u: np.ndarray
    iterations: int
    relative_residual: float
    status: str
    config: BregmanConfig
    residual_history: list[float] = field(default_factory=list)


def linearized_bregman(A, y, cfg: BregmanConfig | None = None, record: bool = False) -> BregmanResult:
    """v += A^T (y - A u);  u = delta * shrink(v, mu), from u = v = 0.

    Stops once ||y - A u|| <= residual_tol * ||y||. Reaching ``max_iters`` is
    reported through ``status``; non-finite iterates raise :class:`NonFiniteError`.
    """
    cfg = (cfg or BregmanConfig()).resolve(A, y)
    op = aslinearoperator(A)
    y = np.asarray(y, dtype=float)
    if y.shape != (op.shape[0],):
        raise ValueError(f"y has shape {y.shape}, operator has {op.shape[0]} rows")
    mu, delta = cfg.mu_threshold, cfg.delta_step
    y_norm = float(np.linalg.norm(y))
    scale = y_norm if y_norm > 0 else 1.0

    v = np.zeros(op.shape[1])
    u = np.zeros(op.shape[1])
    r = y.copy()
    history = []
    rel = float(np.linalg.norm(r)) / scale
    for it in range(1, cfg.max_iters + 1):
        v += op.rmatvec(r)
        u = delta * shrink(v, mu)
        r = y - op.matvec(u)
        rel = float(np.linalg.norm(r)) / scale
        if not np.isfinite(rel) or not np.all(np.isfinite(u)):
            raise NonFiniteError(it)
        if record:
            history.append(rel)
        if rel <= cfg.residual_tol:
            return BregmanResult(u, it, rel, CONVERGED, cfg, history)
    return BregmanResult(u, cfg.max_iters, rel, MAX_ITERS, cfg, history)


def l1_oracle(A, y, k_max: int) -> np.ndarray:
    """Minimum-l1 exact solution among all supports of size <= k_max, by enumeration.

    Ties go to the smaller support, then the lexicographically first one.
    """
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    n = A.shape[1]
    if n > 24 or k_max > 3:
        raise ValueError(f"brute force limited to 24 columns and k_max <= 3 (got {n}, {k_max})")
    feas_tol = 1e-9 * np.linalg.norm(y)
    best, best_l1 = None, np.inf
    for k in range(k_max + 1):
        for support in itertools.combinations(range(n), k):
            x = np.zeros(n)
            if k:
                cols = list(support)
                x[cols] = np.linalg.lstsq(A[:, cols], y, rcond=None)[0]
            if np.linalg.norm(A @ x - y) > feas_tol:
                continue
            l1 = np.abs(x).sum()
            # strict improvement only, so enumeration order settles ties
            if best is None or l1 < best_l1 - 1e-12 * max(1.0, l1):
                best, best_l1 = x, l1
    if best is None:
        raise NoFeasibleSparseSolution(f"no support of size <= {k_max} reproduces y")
    return best


def least_squares_baseline(A, y, rcond: float | None = None) -> tuple[np.ndarray, float]:
    """Least-squares solution via column-pivoted QR; returns (x, ||A x - y||)."""
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    m, n = A.shape
    q, r, perm = scipy.linalg.qr(A, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if rcond is None:
        rcond = max(m, n) * np.finfo(float).eps
    rank = int(np.sum(diag > rcond * diag[0])) if diag.size else 0
    if rank < n:
        raise RankDeficientError(rank, n)
    z = scipy.linalg.solve_triangular(r, q.T @ y)
    x = np.empty(n)
    x[perm] = z
    return x, float(np.linalg.norm(A @ x - y))


def sensing_operator(sensing: SensingMatrix, basis: SparseBasis):
    """Upsilon = Phi Psi; the plain matrix for the pixel basis."""
    phi = sensing.rows
    if basis.kind == PIXEL:
        return phi
    return LinearOperator(
        phi.shape,
        matvec=lambda c: phi @ basis.synthesize(np.ravel(c)),
        rmatvec=lambda r: basis.analyze(phi.T @ np.ravel(r)),
        dtype=float,
    )


@dataclass
class ReconstructionReport:
    w_hat: DiscreteWigner
    coefficients: np.ndarray
    iterations: int
    relative_residual: float
    status: str
    config: BregmanConfig
    basis: SparseBasis
    plan: SensingPlan | None = None
    row_indices: np.ndarray | None = None
    metrics: object = None


def reconstruct(
    y: MeasurementVector,
    sensing: SensingMatrix,
    basis: SparseBasis | str = PIXEL,
    cfg: BregmanConfig | None = None,
    plan: SensingPlan | None = None,
) -> ReconstructionReport:
    d = sensing.d
    if isinstance(basis, str):
        basis = SparseBasis(basis, d * d)
    if basis.n != d * d:
        raise ValueError(f"basis length {basis.n} does not match d^2 = {d * d}")
    if not np.array_equal(y.row_indices, sensing.row_indices):
        raise ValueError("measurement rows do not match the sensing matrix rows")
    result = linearized_bregman(sensing_operator(sensing, basis), y.values, cfg)
    w_hat = DiscreteWigner.from_vector(basis.synthesize(result.u))
    return ReconstructionReport(
        w_hat=w_hat,
        coefficients=result.u,
        iterations=result.iterations,
        relative_residual=result.relative_residual,
        status=result.status,
        config=result.config,
        basis=basis,
        plan=plan,
        row_indices=sensing.row_indices.copy(),
    )
