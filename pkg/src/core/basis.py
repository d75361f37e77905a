"""
Linear B-spline ("hat") basis on the odd collocation points.

Knots are x_1, x_3, ..., x_{n-1} and the right endpoint 1, spaced 2s apart.
phi_1 and phi_m are half-hats, the rest are full hats; at any x at most two
basis functions are nonzero.
"""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from src.core.errors import DimensionError
from src.core.grid import Grid


@dataclass(frozen=True)
class SplineBasis:
    m: int
    knots: np.ndarray = field(repr=False)

    @property
    def half_width(self) -> float:
        """Distance between neighbouring knots (2s)."""
        return 2.0 / (self.m - 1)

    @classmethod
    def for_grid(cls, g: Grid) -> "SplineBasis":
        m = g.m
        knots = -1.0 + g.s * 2.0 * np.arange(m)
        knots[-1] = 1.0
        knots.setflags(write=False)
        return cls(m=m, knots=knots)

    def check_index(self, j: int):
        if not 1 <= j <= self.m:
            raise IndexError(f"Basis index {j} outside 1..{self.m}")

    def locate(self, x: float) -> int:
        """
        0-based index l of the knot interval [knots[l], knots[l+1]] holding x.
        A point on a shared knot belongs to the interval on its left.
        """
        u = (x + 1.0) / self.half_width
        return int(min(max(np.ceil(u) - 1, 0), self.m - 2))


def eval_basis(b: SplineBasis, j: int, x: float) -> float:
    """phi_j(x), 1-based j."""
    b.check_index(j)
    return max(0.0, 1.0 - abs(x - b.knots[j - 1]) / b.half_width)


def eval_continuous_part(b: SplineBasis, coeffs: Sequence[float], x: float) -> float:
    """g_m(x) = sum_j c_j phi_j(x), combining the two hats alive at x."""
    if len(coeffs) != b.m:
        raise DimensionError(f"Expected {b.m} spline coefficients, got {len(coeffs)}")
    l = b.locate(x)
    if x == b.knots[l]:
        return float(coeffs[l])
    if x == b.knots[l + 1]:
        return float(coeffs[l + 1])
    theta = (x - b.knots[l]) / b.half_width
    return float((1.0 - theta) * coeffs[l] + theta * coeffs[l + 1])


def eval_continuous_many(b: SplineBasis, coeffs: Sequence[float], xs: np.ndarray) -> np.ndarray:
    """eval_continuous_part over an array of points."""
    return np.array([eval_continuous_part(b, coeffs, float(x)) for x in np.asarray(xs)])
