"""
Solver Service - least-squares collocation for the exponential-kernel equation.

A fixed-n solve assembles the normal equations of the discrete H1 discrepancy
and solves them; the adaptive driver repeats this for n = 6, 8, 10, ... until
the discrepancy drops to epsilon. Independent runs (several examples, several
tolerances) can be spread over a ThreadPoolExecutor.
"""

import concurrent.futures
import logging
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from src.core.assemble import build_system
from src.core.basis import SplineBasis
from src.core.errors import DimensionError, GridError
from src.core.grid import Grid, QuadratureRule, SampledPair, discrete_h1_norm_sq, make_grid
from src.core.linalg import condition_estimate, solve_system
from src.core.operator import SampleMatrices, build_sample_matrices
from src.models.problem import Problem
from src.models.solution import ApproxSolution, RunStatus, RunTrace

logger = logging.getLogger(__name__)

START_N = 6
DEFAULT_N_MAX = 512
CONDITION_WARNING = 1e12

T = TypeVar("T")
R = TypeVar("R")


class SolverService:
    """
    Runs fixed-n and adaptive solves with one quadrature rule.
    """

    def __init__(self, rule: QuadratureRule = QuadratureRule.LEFT, n_max: int = DEFAULT_N_MAX):
        self.rule = QuadratureRule.from_name(rule) if isinstance(rule, str) else rule
        self.n_max = n_max

    # ─────────────────────────────────────────────────────────────
    # Fixed n
    # ─────────────────────────────────────────────────────────────

    def grid_for(self, n: int) -> Grid:
        return make_grid(n, self.rule)

    def solve_fixed_n(self, p: Problem, g: Grid) -> ApproxSolution:
        """Minimize the discrete H1 discrepancy over the m + 2 coefficients at this grid."""
        basis = SplineBasis.for_grid(g)
        sm = build_sample_matrices(g, basis)
        f_samples = p.sample(g)
        system = build_system(g, sm, f_samples)

        c, info = solve_system(system.A, system.F)
        if info.method != "cholesky":
            logger.warning(f"{p.label}: n={g.n} solved through pivoted LDL^T")

        cond = condition_estimate(system.A)
        if cond > CONDITION_WARNING:
            logger.warning(f"{p.label}: n={g.n} Gram condition estimate {cond:.3e}")

        dp = self.compute_dp(g, sm, f_samples, c)
        logger.debug(f"{p.label}: n={g.n} cond={cond:.3e} residual {info.residual:.2e} -> {info.refined_residual:.2e}")
        return ApproxSolution(
            c_minus1=float(c[0]),
            c_0=float(c[1]),
            spline_coeffs=np.array(c[2:]),
            grid=g,
            dp=dp,
            basis=basis,
            condition=cond,
        )

    @staticmethod
    def compute_dp(g: Grid, sm: SampleMatrices, f_samples: SampledPair, c) -> float:
        """DP = sum_l w_l [(f - Sc)_l^2 + (f' - Tc)_l^2], from the coefficients themselves."""
        c = np.asarray(c, dtype=float)
        if c.shape != (sm.S.shape[1],):
            raise DimensionError(f"Expected {sm.S.shape[1]} coefficients, got shape {c.shape}")
        residual = SampledPair(f_samples.values - sm.S @ c, f_samples.derivs - sm.T @ c)
        return discrete_h1_norm_sq(g, residual)

    # ─────────────────────────────────────────────────────────────
    # Adaptive loop
    # ─────────────────────────────────────────────────────────────

    def solve_adaptive(
        self,
        p: Problem,
        epsilon: float,
        n_max: Optional[int] = None,
    ) -> Tuple[ApproxSolution, RunTrace]:
        """
        Solve at n = 6, 8, 10, ... and stop at the first DP <= epsilon.

        Running past n_max is reported in the trace status, not raised.
        """
        n_max = self.n_max if n_max is None else n_max
        if not epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {epsilon}")
        if n_max < START_N or n_max % 2:
            raise GridError(f"n_max must be an even integer >= {START_N}, got {n_max}")

        trace = RunTrace()
        solution = None
        n = START_N
        while n <= n_max:
            solution = self.solve_fixed_n(p, self.grid_for(n))
            trace.add(n, solution.m, solution.dp)
            logger.info(f"{p.label}: n={n} m={solution.m} DP={solution.dp:.4e} cond={solution.condition:.3e}")
            if solution.dp <= epsilon:
                trace.status = RunStatus.CONVERGED
                break
            n += 2
        else:
            trace.status = RunStatus.MAX_N_REACHED
            logger.warning(f"{p.label}: DP={solution.dp:.4e} still above {epsilon:g} at n_max={n_max}")

        logger.info(f"{p.label}: {trace.status.value} at n={trace.terminal_n}")
        return solution, trace

    # ─────────────────────────────────────────────────────────────
    # Batches
    # ─────────────────────────────────────────────────────────────

    @staticmethod
    def run_batch(fn: Callable[[T], R], jobs: Sequence[T], workers: int = 1) -> List[R]:
        """
        fn over jobs, results in job order whatever the completion order.
        The failure with the lowest job index is re-raised after all jobs finish.
        """
        if workers <= 1 or len(jobs) <= 1:
            return [fn(job) for job in jobs]

        results: List[Optional[R]] = [None] * len(jobs)
        failure = None
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            future_to_index = {executor.submit(fn, job): i for i, job in enumerate(jobs)}
            for future in concurrent.futures.as_completed(future_to_index):
                i = future_to_index[future]
                try:
                    results[i] = future.result()
                except Exception as e:
                    logger.error(f"Job {i} failed: {e}")
                    if failure is None or i < failure[0]:
                        failure = (i, e)
        if failure is not None:
            raise failure[1]
        return results
