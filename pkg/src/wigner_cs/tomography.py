"""Phase-space line geometry, the full line-incidence matrix, and row subsampling.

Grid points are rasterized as ``column = m * d + mu``. The full matrix has
``d + 1`` families of ``d`` parallel lines each:

* family ``tau`` in ``0..d-1`` (sheared): ``mu = mu0 - 2 m tau (mod d)``, one line per ``mu0``;
* family ``d`` (vertical): ``m = m0``, one line per ``m0``.

Rows are ordered family by family, offset ascending, so row ``f * d + offset``
belongs to family ``f``.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .phase_space import DiscreteWigner, odd_dimension

ROW_RANDOM = "row-random"
FAMILY_RANDOM = "family-random"
MODES = (ROW_RANDOM, FAMILY_RANDOM)

# Recorded in every plan file; bump if the sampling procedure changes.
RNG_ALGORITHM = "numpy-pcg64/partial-fisher-yates/v1"


def modular_kronecker(k: int, a: int) -> int:
    """1 if k = 0 (mod a) else 0."""
    if a < 1:
        raise ValueError(f"modulus must be >= 1, got {a}")
    return int(k % a == 0)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n**0.5) + 1))


def prime_dimension(d: int) -> int:
    d = odd_dimension(d)
    if not is_prime(d):
        raise ValueError(
            f"d={d} is not prime; the d+1 line families are informationally complete only for prime d"
        )
    return d


@dataclass(frozen=True)
class PhaseSpaceLine:
    """A line of d grid points. ``tau is None`` marks the vertical family."""

    d: int
    tau: int | None
    offset: int

    @property
    def family(self) -> int:
        return self.d if self.tau is None else self.tau

    @property
    def points(self) -> tuple[tuple[int, int], ...]:
        d = self.d
        if self.tau is None:
            return tuple((self.offset, mu) for mu in range(d))
        return tuple((m, (self.offset - 2 * m * self.tau) % d) for m in range(d))

    def contains(self, m: int, mu: int) -> bool:
        if self.tau is None:
            return modular_kronecker(m - self.offset, self.d) == 1
        return modular_kronecker(mu - self.offset + 2 * m * self.tau, self.d) == 1


@dataclass(frozen=True, eq=False)
class MeasurementMatrix:
    d: int
    rows: np.ndarray
    labels: tuple[PhaseSpaceLine, ...]

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    def family_rows(self, family: int) -> np.ndarray:
        return np.arange(family * self.d, (family + 1) * self.d)


def build_full_matrix(d: int) -> MeasurementMatrix:
    d = prime_dimension(d)
    labels = [PhaseSpaceLine(d, tau, mu0) for tau in range(d) for mu0 in range(d)]
    labels += [PhaseSpaceLine(d, None, m0) for m0 in range(d)]
    rows = np.zeros((len(labels), d * d))
    for i, line in enumerate(labels):
        for m, mu in line.points:
            rows[i, m * d + mu] = 1.0
    rows.setflags(write=False)
    return MeasurementMatrix(d, rows, tuple(labels))


@dataclass(frozen=True)
class SensingPlan:
    d: int
    count: int
    seed: int
    mode: str = ROW_RANDOM

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown sampling mode {self.mode!r}; expected one of {MODES}")
        n_rows = (self.d + 1) * self.d
        if not 1 <= self.count <= n_rows:
            raise ValueError(f"row count must be in [1, {n_rows}], got {self.count}")
        if self.mode == FAMILY_RANDOM and self.count % self.d:
            raise ValueError(f"family-random sampling needs a row count divisible by d={self.d}, got {self.count}")


@dataclass(frozen=True, eq=False)
class SensingMatrix:
    """Kept rows of the full matrix, in ascending full-matrix order."""

    d: int
    rows: np.ndarray
    row_indices: np.ndarray


@dataclass(frozen=True, eq=False)
class MeasurementVector:
    values: np.ndarray
    row_indices: np.ndarray


def fisher_yates_prefix(n: int, k: int, seed: int) -> np.ndarray:
    """First k entries of a seeded Fisher-Yates shuffle of range(n)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    perm = np.arange(n)
    for i in range(k):
        j = int(rng.integers(i, n))
        perm[i], perm[j] = perm[j], perm[i]
    return perm[:k].copy()


def select_rows(plan: SensingPlan) -> np.ndarray:
    d = plan.d
    n_rows = (d + 1) * d
    if plan.count == n_rows:
        return np.arange(n_rows)
    if plan.mode == ROW_RANDOM:
        picked = fisher_yates_prefix(n_rows, plan.count, plan.seed)
    else:
        families = fisher_yates_prefix(d + 1, plan.count // d, plan.seed)
        picked = (families[:, None] * d + np.arange(d)).ravel()
    return np.sort(picked)


def sample_rows(full: MeasurementMatrix, plan: SensingPlan) -> SensingMatrix:
    if plan.d != full.d:
        raise ValueError(f"plan is for d={plan.d}, matrix has d={full.d}")
    idx = select_rows(plan)
    return SensingMatrix(full.d, full.rows[idx], idx)


def measure(w: DiscreteWigner, sensing: SensingMatrix) -> MeasurementVector:
    """Noiseless line sums of the grid, one per kept row."""
    if w.d != sensing.d:
        raise ValueError(f"grid has d={w.d}, sensing matrix has d={sensing.d}")
    return MeasurementVector(sensing.rows @ w.vector(), sensing.row_indices.copy())


def write_plan(plan: SensingPlan, path, row_indices=None) -> None:
    if row_indices is None:
        row_indices = select_rows(plan)
    lines = [
        "# sensing plan",
        f"d {plan.d}",
        f"mode {plan.mode}",
        f"count {plan.count}",
        f"seed {plan.seed}",
        f"rng {RNG_ALGORITHM}",
        "rows",
    ]
    lines += [str(int(i)) for i in sorted(row_indices)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_plan(path) -> tuple[SensingPlan, np.ndarray]:
    """Parse a plan file and check its row list against a fresh draw from the seed."""
    header, rows, in_rows = {}, [], False
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if in_rows:
            rows.append(int(line))
        elif line == "rows":
            in_rows = True
        else:
            key, _, value = line.partition(" ")
            header[key] = value
    try:
        plan = SensingPlan(int(header["d"]), int(header["count"]), int(header["seed"]), header["mode"])
    except KeyError as exc:
        raise ValueError(f"{path}: plan header lacks {exc.args[0]!r}") from None
    if header.get("rng", RNG_ALGORITHM) != RNG_ALGORITHM:
        raise ValueError(f"{path}: plan drawn with {header['rng']!r}, this build uses {RNG_ALGORITHM!r}")
    rows = np.array(rows, dtype=int)
    if not np.array_equal(rows, select_rows(plan)):
        raise ValueError(f"{path}: row list does not match the plan's seed")
    return plan, rows


def write_measurements(y: MeasurementVector, path) -> None:
    lines = ["row,value"] + [f"{int(i)},{v:.17g}" for i, v in zip(y.row_indices, y.values)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_measurements(path) -> MeasurementVector:
    lines = Path(path).read_text().split()
    if not lines or lines[0] != "row,value":
        raise ValueError(f"{path}: missing 'row,value' header")
    idx, vals = [], []
    for line in lines[1:]:
        i, v = line.split(",")
        idx.append(int(i))
        vals.append(float(v))
    return MeasurementVector(np.array(vals), np.array(idx, dtype=int))
