"""
Metrics Service - benchmark error measures against an exact solution.

RPE(t_i) = |g_m(t_i) - g(t_i)| / max_i |g(t_i)| on the uniform grid
t_i = -1 + (i-1) 2/(M-1), and RE = max_i RPE(t_i).
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from src.models.problem import ExactSolution
from src.models.solution import ApproxSolution

logger = logging.getLogger(__name__)

DEFAULT_M = 200


class ReportStatus(Enum):
    OK = "ok"
    UNDEFINED_RPE = "undefined-rpe"


def evaluation_points(M: int) -> np.ndarray:
    if M < 2:
        raise ValueError(f"M must be at least 2, got {M}")
    return -1.0 + np.arange(M) * (2.0 / (M - 1))


@dataclass(frozen=True)
class ErrorReport:
    """
    Pointwise and summary errors of one solution.

    With status UNDEFINED_RPE (g vanishes on the grid) rpe holds absolute
    errors instead of relative ones.
    """
    M: int
    t: np.ndarray = field(repr=False)
    g: np.ndarray = field(repr=False)
    g_m: np.ndarray = field(repr=False)
    rpe: np.ndarray = field(repr=False)
    re: float
    coeff_errors: Tuple[float, float]
    dp: float
    status: ReportStatus = ReportStatus.OK

    def to_rows(self) -> List[Tuple[float, float, float, float]]:
        """(t, g, g_m, rpe) per evaluation point."""
        return [(float(a), float(b), float(c), float(d))
                for a, b, c, d in zip(self.t, self.g, self.g_m, self.rpe)]


class MetricsService:
    def __init__(self, M: int = DEFAULT_M):
        self.M = M

    def evaluate(self, sol: ApproxSolution, exact: ExactSolution, M: Optional[int] = None) -> ErrorReport:
        M = self.M if M is None else M
        t = evaluation_points(M)
        g = np.array([exact.g(float(x)) for x in t])
        g_m = np.asarray(sol.evaluate(t), dtype=float)
        abs_err = np.abs(g_m - g)
        scale = float(np.max(np.abs(g)))

        if scale > 0.0:
            rpe = abs_err / scale
            status = ReportStatus.OK
        else:
            logger.warning("Exact continuous part vanishes on the evaluation grid; reporting absolute errors")
            rpe = abs_err
            status = ReportStatus.UNDEFINED_RPE

        return ErrorReport(
            M=M,
            t=t,
            g=g,
            g_m=g_m,
            rpe=rpe,
            re=float(np.max(rpe)),
            coeff_errors=(abs(sol.c_minus1 - exact.a_minus1), abs(sol.c_0 - exact.a_0)),
            dp=sol.dp,
            status=status,
        )

    def approximate_rows(self, sol: ApproxSolution, M: Optional[int] = None) -> List[Tuple[float, None, float, None]]:
        """Point-file rows when no exact solution is known."""
        t = evaluation_points(self.M if M is None else M)
        g_m = np.asarray(sol.evaluate(t), dtype=float)
        return [(float(a), None, float(b), None) for a, b in zip(t, g_m)]


def evaluate(sol: ApproxSolution, exact: ExactSolution, M: int = DEFAULT_M) -> ErrorReport:
    return MetricsService(M).evaluate(sol, exact)
