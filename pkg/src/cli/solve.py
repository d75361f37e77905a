"""
Solve command - adaptive run for one problem.

Usage:
    python -m src.cli solve --example 1 --epsilon 1e-6
    python -m src.cli solve --f "exp(-x)+2*sin(2*pi*(x+1))" --oracle --out out/ex4.csv
"""

from src.cli.common import (
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_USAGE,
    default_output_path,
    run_config_from_args,
    run_guarded,
    validate,
)
from src.models.problem import Problem
from src.models.run_config import RunConfig
from src.models.solution import ApproxSolution, RunTrace
from src.services.export_service import POINT_FIELDS, ExportService
from src.services.metrics_service import ErrorReport, MetricsService
from src.services.solver_service import SolverService


def _fmt(value) -> str:
    return '{:.4e}'.format(value)


def summary_line(problem: Problem, sol: ApproxSolution, trace: RunTrace, report: ErrorReport = None) -> str:
    parts = [
        f"{problem.label}:",
        trace.status.value,
        f"n={sol.n}",
        f"m={sol.m}",
        f"DP={_fmt(sol.dp)}",
    ]
    if report is not None:
        parts.append(f"RE={_fmt(report.re)}")
    parts += [f"c_m1={_fmt(sol.c_minus1)}", f"c_0={_fmt(sol.c_0)}"]
    if problem.exact is not None:
        parts += [f"a_m1={_fmt(problem.exact.a_minus1)}", f"a_0={_fmt(problem.exact.a_0)}"]
    return " ".join(parts)


def run_solve(cfg: RunConfig) -> int:
    problem = cfg.problem()
    solver = SolverService(cfg.rule, cfg.n_max)
    sol, trace = solver.solve_adaptive(problem, cfg.epsilon)

    metrics = MetricsService(cfg.M)
    report = None
    if problem.exact is not None:
        report = metrics.evaluate(sol, problem.exact)
        rows = report.to_rows()
    else:
        rows = metrics.approximate_rows(sol)

    print(summary_line(problem, sol, trace, report))

    exporter = ExportService()
    metadata = {
        'source': cfg.source_label,
        'f': problem.f_text,
        'epsilon': cfg.epsilon,
        'rule': cfg.rule.value,
        'status': trace.status.value,
        'n': sol.n,
        'm': sol.m,
        'dp': sol.dp,
        'c_m1': sol.c_minus1,
        'c_0': sol.c_0,
        'M': cfg.M,
    }
    if report is not None:
        metadata['rpe_status'] = report.status.value
    path = cfg.out or default_output_path('solve', cfg)
    exporter.write(path, exporter.render(cfg.output_format, POINT_FIELDS,
                                         exporter.point_rows(rows), metadata))

    return EXIT_OK if trace.converged else EXIT_NOT_CONVERGED


def solve_command(args) -> int:
    """Execute the solve command."""
    cfg = run_config_from_args(args)
    if not validate(cfg, "solve"):
        return EXIT_USAGE
    return run_guarded(lambda: run_solve(cfg), f"Solving {cfg.source_label}")
