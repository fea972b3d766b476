"""Grid error metrics and deterministic file emitters (PGM images, JSON reports)."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .phase_space import DiscreteWigner
from .solver import ReconstructionReport
from .tomography import RNG_ALGORITHM, SensingPlan, select_rows

SUPPORT_REL_EPS = 1e-6
REPORT_FORMAT = "wigner-cs-report/v1"


@dataclass(frozen=True)
class GridMetrics:
    relative_l2: float
    max_abs: float
    support_jaccard: float


def compare(w_true: DiscreteWigner, w_hat: DiscreteWigner) -> GridMetrics:
    """Errors of ``w_hat`` against ``w_true``.

    The support of both grids is taken at the same threshold, 1e-6 * max|w_true|.
    """
    if w_true.d != w_hat.d:
        raise ValueError(f"grid dimensions differ: {w_true.d} vs {w_hat.d}")
    a, b = w_true.values, w_hat.values
    diff = b - a
    norm = np.linalg.norm(a)
    rel = float(np.linalg.norm(diff) / norm) if norm > 0 else float(np.linalg.norm(diff))
    eps = SUPPORT_REL_EPS * np.abs(a).max()
    sa, sb = np.abs(a) > eps, np.abs(b) > eps
    union = np.count_nonzero(sa | sb)
    jac = np.count_nonzero(sa & sb) / union if union else 1.0
    return GridMetrics(rel, float(np.abs(diff).max()), float(jac))


def pgm_bytes(w: DiscreteWigner) -> bytes:
    """8-bit grayscale, darkest at the grid maximum; rows are m, columns mu."""
    v = w.values
    hi, lo = v.max(), v.min()
    if hi == lo:
        pix = np.full(v.shape, 128, dtype=np.uint8)
    else:
        pix = np.floor(255.0 * (hi - v) / (hi - lo) + 0.5).astype(np.uint8)
    return f"P5\n{w.d} {w.d}\n255\n".encode("ascii") + pix.tobytes()


def emit_pgm(w: DiscreteWigner, path) -> None:
    path = Path(path)
    try:
        path.write_bytes(pgm_bytes(w))
    except OSError as exc:
        raise OSError(f"cannot write image {path}: {exc.strerror or exc}") from exc


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    magic, size, maxval, rest = data.split(b"\n", 3)
    if magic != b"P5" or maxval != b"255":
        raise ValueError(f"{path}: not an 8-bit binary PGM")
    w, h = map(int, size.split())
    return np.frombuffer(rest, dtype=np.uint8).reshape(h, w)


def _finite(x: float):
    return x if math.isfinite(x) else repr(x)


def report_dict(report: ReconstructionReport, state: dict | None = None) -> dict:
    cfg = report.config
    out = {
        "format": REPORT_FORMAT,
        "d": report.w_hat.d,
        "state": dict(state or {}),
        "basis": report.basis.kind,
        "solver": {
            "algorithm": "linearized-bregman",
            "mu_threshold": cfg.mu_threshold,
            "delta_step": cfg.delta_step,
            "max_iters": cfg.max_iters,
            "residual_tol": cfg.residual_tol,
            "mu_scale": cfg.mu_scale,
            "step_scale": cfg.step_scale,
        },
        "result": {
            "status": report.status,
            "iterations": report.iterations,
            "relative_residual": _finite(report.relative_residual),
        },
    }
    if report.plan is not None:
        out["plan"] = {
            "mode": report.plan.mode,
            "count": report.plan.count,
            "seed": report.plan.seed,
            "rng": RNG_ALGORITHM,
            "row_indices": [int(i) for i in report.row_indices],
        }
    if report.metrics is not None:
        out["metrics"] = asdict(report.metrics)
    return out


def emit_report(report: ReconstructionReport, path, state: dict | None = None) -> None:
    path = Path(path)
    text = json.dumps(report_dict(report, state), indent=2, sort_keys=True) + "\n"
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report {path}: {exc.strerror or exc}") from exc


def load_report(path) -> dict:
    return json.loads(Path(path).read_text())


def plan_from_report(path) -> tuple[SensingPlan, np.ndarray]:
    """Rebuild the sensing plan recorded in a report and confirm its row list."""
    doc = load_report(path)
    if "plan" not in doc:
        raise ValueError(f"{path}: report has no sensing plan")
    p = doc["plan"]
    if p.get("rng") != RNG_ALGORITHM:
        raise ValueError(f"{path}: plan drawn with {p.get('rng')!r}, this build uses {RNG_ALGORITHM!r}")
    plan = SensingPlan(doc["d"], p["count"], p["seed"], p["mode"])
    rows = np.array(p["row_indices"], dtype=int)
    if not np.array_equal(rows, select_rows(plan)):
        raise ValueError(f"{path}: recorded rows do not match the plan's seed")
    return plan, rows
