"""
Results of a collocation run: the approximate solution and the trace of the
adaptive loop that produced it.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from src.core.basis import SplineBasis, eval_continuous_many, eval_continuous_part
from src.core.grid import Grid


class RunStatus(Enum):
    CONVERGED = "converged"
    MAX_N_REACHED = "max-n-reached"


@dataclass(frozen=True)
class ApproxSolution:
    """
    h_m = c_{-1} delta(x+1) + c_0 delta(x-1) + sum_j c_j phi_j.

    Only the continuous part can be evaluated pointwise.
    """
    c_minus1: float
    c_0: float
    spline_coeffs: np.ndarray = field(repr=False)
    grid: Grid = field(repr=False)
    dp: float
    basis: SplineBasis = field(repr=False, compare=False)
    condition: Optional[float] = None

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def m(self) -> int:
        return self.basis.m

    @property
    def coefficients(self) -> np.ndarray:
        """Full vector (c_{-1}, c_0, c_1, ..., c_m) in the system's column order."""
        return np.concatenate(([self.c_minus1, self.c_0], self.spline_coeffs))

    def evaluate(self, x):
        """g_m at a point or over an array of points."""
        if np.ndim(x) == 0:
            return eval_continuous_part(self.basis, self.spline_coeffs, float(x))
        return eval_continuous_many(self.basis, self.spline_coeffs, np.asarray(x, dtype=float))


@dataclass(frozen=True)
class TraceEntry:
    n: int
    m: int
    dp: float


@dataclass
class RunTrace:
    entries: List[TraceEntry] = field(default_factory=list)
    status: Optional[RunStatus] = None

    def add(self, n: int, m: int, dp: float):
        self.entries.append(TraceEntry(n, m, dp))

    @property
    def terminal_n(self) -> Optional[int]:
        return self.entries[-1].n if self.entries else None

    @property
    def converged(self) -> bool:
        return self.status == RunStatus.CONVERGED

    def as_tuples(self) -> List[Tuple[int, int, float]]:
        return [(e.n, e.m, e.dp) for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)
