"""
Published Table Check
Each published row (n, m) is reproduced by the fixed solve on n - 2 points.
Prints every cell of that solve next to its published value with the relative
deviation, plus the (n, m) where the adaptive loop first reaches DP <= epsilon.
Also checks that the analytic solution of each example maps back onto f.

Exit status 1 when a DP deviates by more than 0.1% or an RE by more than 10%.
"""

import logging
import sys
from pathlib import Path

import numpy as np

# Add project root to path
sys.path.append(str(Path(__file__).parent.parent))

from src.core.config import app_config
from src.core.expr import eval_jet
from src.models.problem import apply_R_to_exact, builtin_example, exact_from_f
from src.services.metrics_service import MetricsService
from src.services.solver_service import SolverService

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

# example -> [(epsilon, n, m, dp, re)]
PUBLISHED = {
    1: [(1e-4, 24, 13, 8.610e-6, 3.239e-2),
        (1e-6, 32, 17, 7.137e-7, 1.554e-2),
        (1e-8, 56, 29, 6.404e-9, 4.337e-3)],
    2: [(1e-4, 24, 13, 8.964e-6, 3.871e-2),
        (1e-6, 32, 17, 7.588e-7, 1.821e-2),
        (1e-8, 56, 29, 6.947e-9, 4.869e-3)],
    3: [(1e-4, 80, 41, 4.635e-5, 2.282e-2),
        (1e-6, 128, 65, 9.739e-7, 7.671e-3),
        (1e-8, 232, 117, 7.804e-9, 2.163e-3)],
    4: [(1e-4, 40, 21, 8.775e-5, 3.574e-2),
        (1e-6, 72, 37, 6.651e-7, 1.029e-2),
        (1e-8, 128, 65, 6.147e-9, 3.199e-3)],
}

DP_TOLERANCE = 1e-3
RE_TOLERANCE = 0.1


def _relative(got: float, want: float) -> float:
    return abs(got - want) / abs(want)


def _deviation(got: float, want: float) -> str:
    return f"{got:.3e} (published {want:.3e}, {100.0 * (got - want) / want:+.1f}%)"


def check_tables() -> bool:
    solver = SolverService(app_config.rule, app_config.n_max)
    metrics = MetricsService(app_config.M)
    all_match = True

    for example_id, rows in PUBLISHED.items():
        problem = builtin_example(example_id)
        print(f"\n{problem.label}")
        print("-" * 60)
        for eps, n, m, dp, re in rows:
            sol = solver.solve_fixed_n(problem, solver.grid_for(n - 2))
            report = metrics.evaluate(sol, problem.exact)
            adaptive, trace = solver.solve_adaptive(problem, eps)
            match = _relative(sol.dp, dp) <= DP_TOLERANCE and _relative(report.re, re) <= RE_TOLERANCE
            all_match = all_match and match
            flag = "ok" if match else "MISMATCH"
            print(f"eps={eps:g}  published {n}/{m} <- solve n={sol.n} m={sol.m} [{flag}]"
                  f"  adaptive stop n={adaptive.n} m={adaptive.m} ({trace.status.value})")
            print(f"    DP  {_deviation(sol.dp, dp)}")
            print(f"    RE  {_deviation(report.re, re)}")
            print(f"    c_m1={sol.c_minus1:.4f} (a_m1={problem.exact.a_minus1:.4f})"
                  f"  c_0={sol.c_0:.4f} (a_0={problem.exact.a_0:.4f})")

    return all_match


def check_round_trip() -> float:
    """Largest |R h - f| over the examples on 101 points."""
    worst = 0.0
    xs = np.linspace(-1.0, 1.0, 101)
    for example_id in PUBLISHED:
        problem = builtin_example(example_id)
        exact = exact_from_f(problem)
        err = max(
            abs(apply_R_to_exact(exact, float(x), app_config.oracle_tolerance, app_config.oracle_max_depth)
                - float(eval_jet(problem.f, float(x)).v))
            for x in xs
        )
        logger.info(f"{problem.label}: round-trip sup error {err:.2e}")
        worst = max(worst, err)
    return worst


if __name__ == "__main__":
    ok = check_tables()
    print(f"\nRound-trip sup error: {check_round_trip():.2e}")
    sys.exit(0 if ok else 1)
