"""
Sweep command - fixed-n solves for a convergence study.

Usage:
    python -m src.cli sweep --example 1 --n 8 16 32 64
    python -m src.cli sweep --example 4 --n 6:40:2 --out out/sweep4.csv
"""

from dataclasses import dataclass
from typing import List

from src.cli.common import (
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    run_config_from_args,
    run_guarded,
    validate,
)
from src.core.grid import MIN_POINTS
from src.models.problem import Problem
from src.models.run_config import RunConfig
from src.services.export_service import SWEEP_FIELDS, ExportService, SweepRow
from src.services.metrics_service import MetricsService
from src.services.solver_service import SolverService


def parse_n_values(tokens: List[str]) -> List[int]:
    """
    Integers and lo:hi[:step] ranges (hi inclusive, step 2 by default).
    Every value must be even and at least 6.
    """
    values: List[int] = []
    for token in tokens:
        try:
            if ':' in token:
                parts = [int(p) for p in token.split(':')]
                if len(parts) not in (2, 3):
                    raise ValueError
                lo, hi = parts[0], parts[1]
                step = parts[2] if len(parts) == 3 else 2
                if step <= 0:
                    raise ValueError
                values.extend(range(lo, hi + 1, step))
            else:
                values.append(int(token))
        except ValueError:
            raise UsageError(f"Invalid n value or range: '{token}'") from None

    if not values:
        raise UsageError("sweep needs at least one n")
    for n in values:
        if n % 2 or n < MIN_POINTS:
            raise UsageError(f"n must be an even integer >= {MIN_POINTS}, got {n}")
    return values


@dataclass(frozen=True)
class _SweepJob:
    problem: Problem
    n: int
    cfg: RunConfig


def sweep_row(job: _SweepJob) -> SweepRow:
    solver = SolverService(job.cfg.rule)
    sol = solver.solve_fixed_n(job.problem, solver.grid_for(job.n))
    exact = job.problem.exact
    re = MetricsService(job.cfg.M).evaluate(sol, exact).re if exact is not None else None
    return SweepRow(n=sol.n, m=sol.m, dp=sol.dp, re=re, cond=sol.condition)


def run_sweep(cfg: RunConfig, n_tokens: List[str]) -> int:
    n_values = parse_n_values(n_tokens)
    problem = cfg.problem()
    jobs = [_SweepJob(problem, n, cfg) for n in n_values]
    results = SolverService.run_batch(sweep_row, jobs, workers=cfg.workers)

    exporter = ExportService()
    rows = exporter.record_rows(results)
    print(f"{cfg.source_label}")
    print(exporter.format_table(SWEEP_FIELDS, rows))

    if cfg.out:
        metadata = {'source': cfg.source_label, 'rule': cfg.rule.value, 'M': cfg.M}
        exporter.write(cfg.out, exporter.render(cfg.output_format, SWEEP_FIELDS, rows, metadata))
    return EXIT_OK


def sweep_command(args) -> int:
    """Execute the sweep command."""
    cfg = run_config_from_args(args)
    if not validate(cfg, "sweep"):
        return EXIT_USAGE
    return run_guarded(lambda: run_sweep(cfg, args.n), f"Sweep for {cfg.source_label}")
