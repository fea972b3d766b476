"""Command-line front end.

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure (solver divergence), 4 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import io_metrics, phase_space, tomography
from .experiment import FIG1_AMPLITUDE, FIG1_D, FIG1_ROWS, STATES, StateSpec, run_reconstruction, truth_grid
from .solver import COSINE, PIXEL, BregmanConfig, reconstruct
from .tomography import FAMILY_RANDOM, ROW_RANDOM, SensingPlan

DEFAULT_SEED = 7

EXIT_USAGE = 2
EXIT_DIVERGED = 3
EXIT_IO = 4


def _state_args(p):
    g = p.add_argument_group("state")
    g.add_argument("--d", type=int, default=FIG1_D, help="odd Hilbert-space dimension (prime for tomography)")
    g.add_argument("--state", choices=STATES, default="coherent")
    g.add_argument("--amplitude", type=float, default=FIG1_AMPLITUDE, help="coherent-state |alpha|")
    g.add_argument("--phase", type=float, default=0.0, help="coherent-state phase in radians")
    g.add_argument("--level", type=int, default=0, help="Fock level")
    g.add_argument("--rank", type=int, default=None, help="rank of a random state (default d)")


def _plan_args(p):
    g = p.add_argument_group("sensing plan")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for row selection and random states")
    g.add_argument("--mode", choices=(ROW_RANDOM, FAMILY_RANDOM), default=ROW_RANDOM)
    g.add_argument("--rows", type=int, default=None, help=f"rows kept (default {FIG1_ROWS} at d=19, else all)")


def _solver_args(p):
    g = p.add_argument_group("solver")
    g.add_argument("--basis", choices=(PIXEL, COSINE), default=PIXEL)
    g.add_argument("--mu", type=float, default=None, help="shrinkage threshold (default: scaled from data)")
    g.add_argument("--mu-scale", type=float, default=BregmanConfig.mu_scale)
    g.add_argument("--delta", type=float, default=None, help="step size (default: 1.8 / ||A||^2)")
    g.add_argument("--max-iters", type=int, default=BregmanConfig.max_iters)
    g.add_argument("--tol", type=float, default=BregmanConfig.residual_tol)


def _out_arg(p):
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wigner-cs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write the truth Wigner grid (CSV + PGM)")
    _state_args(p)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _out_arg(p)

    p = sub.add_parser("measure", help="sample lines and write the plan and measured line sums")
    _state_args(p)
    _plan_args(p)
    _out_arg(p)

    p = sub.add_parser("reconstruct", help="recover the grid by l1 minimization")
    _state_args(p)
    _plan_args(p)
    _solver_args(p)
    p.add_argument("--plan", type=Path, help="plan file from `measure` (requires --measurements)")
    p.add_argument("--measurements", type=Path, help="line sums from `measure`")
    p.add_argument("--truth", type=Path, help="truth CSV for metrics when consuming files")
    _out_arg(p)

    p = sub.add_parser("compare", help="error metrics between two grids")
    p.add_argument("--truth", type=Path, required=True)
    p.add_argument("--estimate", type=Path, required=True)
    _out_arg(p)

    p = sub.add_parser("reproduce-fig1", help="d=19 coherent state from 285 of 380 lines")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--rows", type=int, default=FIG1_ROWS)
    p.add_argument("--mode", choices=(ROW_RANDOM, FAMILY_RANDOM), default=ROW_RANDOM)
    p.add_argument("--phase", type=float, default=0.0, help="coherent-state phase in radians")
    _solver_args(p)
    _out_arg(p)
    return parser


def _state(args) -> StateSpec:
    return StateSpec(args.state, args.d, args.amplitude, args.phase, args.level, args.rank, args.seed)


def _plan(args) -> SensingPlan:
    d = args.d
    rows = args.rows
    if rows is None:
        rows = FIG1_ROWS if d == FIG1_D else (d + 1) * d
    tomography.prime_dimension(d)
    return SensingPlan(d, rows, args.seed, args.mode)


def _config(args) -> BregmanConfig:
    return BregmanConfig(
        mu_threshold=args.mu,
        delta_step=args.delta,
        max_iters=args.max_iters,
        residual_tol=args.tol,
        mu_scale=args.mu_scale,
    )


def _write_grid(w, out: Path, stem: str) -> list[Path]:
    csv, pgm = out / f"{stem}.csv", out / f"{stem}.pgm"
    phase_space.write_csv(w, csv)
    io_metrics.emit_pgm(w, pgm)
    return [csv, pgm]


def _write_metrics(metrics, path: Path) -> Path:
    path.write_text(json.dumps(asdict(metrics), indent=2, sort_keys=True) + "\n")
    return path


def cmd_generate(args) -> list[Path]:
    return _write_grid(truth_grid(_state(args)), args.out, "truth")


def cmd_measure(args) -> list[Path]:
    plan = _plan(args)
    truth = truth_grid(_state(args))
    sensing = tomography.sample_rows(tomography.build_full_matrix(plan.d), plan)
    y = tomography.measure(truth, sensing)
    plan_path, y_path = args.out / "plan.txt", args.out / "measurements.csv"
    tomography.write_plan(plan, plan_path, sensing.row_indices)
    tomography.write_measurements(y, y_path)
    return [plan_path, y_path]


def cmd_reconstruct(args) -> list[Path]:
    cfg = _config(args)
    if (args.plan is None) != (args.measurements is None):
        raise ValueError("--plan and --measurements must be given together")
    if args.plan is not None:
        plan, rows = tomography.read_plan(args.plan)
        y = tomography.read_measurements(args.measurements)
        if not (rows.size == y.row_indices.size and (rows == y.row_indices).all()):
            raise ValueError("measurement rows do not match the plan")
        sensing = tomography.sample_rows(tomography.build_full_matrix(plan.d), plan)
        report = reconstruct(y, sensing, args.basis, cfg, plan=plan)
        state = {"source": str(args.measurements)}
        if args.truth is not None:
            report.metrics = io_metrics.compare(phase_space.read_csv(args.truth), report.w_hat)
    else:
        spec = _state(args)
        run = run_reconstruction(truth_grid(spec), _plan(args), args.basis, cfg)
        report, state = run.report, spec.describe()
    written = _write_grid(report.w_hat, args.out, "recovered")
    report_path = args.out / "report.json"
    io_metrics.emit_report(report, report_path, state)
    written.append(report_path)
    if report.metrics is not None:
        written.append(_write_metrics(report.metrics, args.out / "metrics.json"))
    return written


def cmd_compare(args) -> list[Path]:
    metrics = io_metrics.compare(phase_space.read_csv(args.truth), phase_space.read_csv(args.estimate))
    print(json.dumps(asdict(metrics), sort_keys=True))
    return [_write_metrics(metrics, args.out / "metrics.json")]


def cmd_reproduce_fig1(args) -> list[Path]:
    spec = StateSpec("coherent", FIG1_D, FIG1_AMPLITUDE, args.phase)
    plan = SensingPlan(FIG1_D, args.rows, args.seed, args.mode)
    run = run_reconstruction(truth_grid(spec), plan, args.basis, _config(args))
    written = _write_grid(run.truth, args.out, "truth")
    written += _write_grid(run.report.w_hat, args.out, "recovered")
    report_path = args.out / "report.json"
    io_metrics.emit_report(run.report, report_path, spec.describe())
    m = run.metrics
    print(
        f"d={FIG1_D} rows={plan.count}/{(FIG1_D + 1) * FIG1_D} seed={plan.seed} "
        f"status={run.report.status} iterations={run.report.iterations} "
        f"relative_l2={m.relative_l2:.4g} support_jaccard={m.support_jaccard:.4g}"
    )
    return written + [report_path]


COMMANDS = {
    "generate": cmd_generate,
    "measure": cmd_measure,
    "reconstruct": cmd_reconstruct,
    "compare": cmd_compare,
    "reproduce-fig1": cmd_reproduce_fig1,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if not args.out.is_dir():
            raise FileNotFoundError(f"output directory {args.out} does not exist")
        COMMANDS[args.command](args)
    except ArithmeticError as exc:
        print(f"wigner-cs: error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except OSError as exc:
        print(f"wigner-cs: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError) as exc:
        print(f"wigner-cs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
