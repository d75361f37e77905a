"""
Table command - one adaptive run per tolerance, laid out as
n, m, epsilon, a_m1, c_m1, a_0, c_0, DP, RE.

Usage:
    python -m src.cli table --example 3
    python -m src.cli table --example 2 --epsilon 1e-8 --out out/table2.csv
"""

from dataclasses import replace
from typing import List, Tuple

from src.cli.common import (
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    run_config_from_args,
    run_guarded,
    validate,
)
from src.core.config import app_config
from src.models.run_config import RunConfig
from src.services.export_service import TABLE_FIELDS, ExportService, TableRow
from src.services.metrics_service import MetricsService
from src.services.solver_service import SolverService


def table_row(cfg: RunConfig) -> Tuple[TableRow, bool]:
    """Adaptive solve for one epsilon; the flag says whether it converged."""
    problem = cfg.problem()
    sol, trace = SolverService(cfg.rule, cfg.n_max).solve_adaptive(problem, cfg.epsilon)
    exact = problem.exact
    re = MetricsService(cfg.M).evaluate(sol, exact).re if exact is not None else None
    row = TableRow(
        n=sol.n,
        m=sol.m,
        epsilon=cfg.epsilon,
        a_m1=exact.a_minus1 if exact is not None else None,
        c_m1=sol.c_minus1,
        a_0=exact.a_0 if exact is not None else None,
        c_0=sol.c_0,
        dp=sol.dp,
        re=re,
    )
    return row, trace.converged


def run_table(cfg: RunConfig, epsilons: List[float]) -> int:
    if not epsilons:
        raise UsageError("table needs at least one epsilon")

    configs = [replace(cfg, epsilon=eps) for eps in epsilons]
    for c in configs:
        if not validate(c, "table"):
            return EXIT_USAGE

    results = SolverService.run_batch(table_row, configs, workers=cfg.workers)

    exporter = ExportService()
    rows = exporter.record_rows([row for row, _ in results])
    print(f"{cfg.source_label}")
    print(exporter.format_table(TABLE_FIELDS, rows))

    if cfg.out:
        metadata = {'source': cfg.source_label, 'rule': cfg.rule.value, 'M': cfg.M}
        exporter.write(cfg.out, exporter.render(cfg.output_format, TABLE_FIELDS, rows, metadata))

    return EXIT_OK if all(ok for _, ok in results) else EXIT_NOT_CONVERGED


def table_command(args) -> int:
    """Execute the table command."""
    cfg = run_config_from_args(args)
    epsilons = app_config.table_epsilons if args.epsilons is None else list(args.epsilons)
    return run_guarded(lambda: run_table(cfg, epsilons), f"Table for {cfg.source_label}")
