"""
Collocation grid and the discrete Sobolev (H1) inner product.

The n collocation points are the left endpoints x_j = -1 + (j-1)s, s = 2/n.
The weights define the quadrature used for the discrete norm
    ||u||^2 = sum_j w_j (u_j^2 + u'_j^2).
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from src.core.errors import DimensionError, GridError

MIN_POINTS = 6


class QuadratureRule(Enum):
    """Weights attached to the left-point set."""
    LEFT = "left"              # left rectangle, all weights 2/n
    TRAPEZOID = "trapezoid"    # 1/n at x_1, 2/n elsewhere; x = 1 not sampled

    @classmethod
    def from_name(cls, name: str) -> "QuadratureRule":
        try:
            return cls(name.lower())
        except ValueError:
            valid = ", ".join(r.value for r in cls)
            raise GridError(f"Unknown quadrature rule '{name}' (expected one of: {valid})") from None


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Grid:
    n: int
    rule: QuadratureRule
    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def s(self) -> float:
        return 2.0 / self.n

    @property
    def m(self) -> int:
        """Number of spline basis functions."""
        return self.n // 2 + 1


@dataclass(frozen=True)
class SampledPair:
    """Samples (phi(x_j), phi'(x_j)) of a function at the collocation points."""
    values: np.ndarray
    derivs: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        derivs = np.asarray(self.derivs, dtype=float)
        if values.ndim != 1 or values.shape != derivs.shape:
            raise DimensionError(
                f"Sample arrays must be 1-D and equal length, got {values.shape} and {derivs.shape}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "derivs", derivs)

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def zeros(cls, n: int) -> "SampledPair":
        return cls(np.zeros(n), np.zeros(n))


def make_grid(n: int, rule: QuadratureRule = QuadratureRule.LEFT) -> Grid:
    """Build the grid for an even n >= 6."""
    if isinstance(rule, str):
        rule = QuadratureRule.from_name(rule)
    if int(n) != n or n % 2 != 0 or n < MIN_POINTS:
        raise GridError(f"n must be an even integer >= {MIN_POINTS}, got {n}")
    n = int(n)
    s = 2.0 / n
    points = -1.0 + s * np.arange(n)
    weights = np.full(n, s)
    if rule is QuadratureRule.TRAPEZOID:
        weights[0] = 0.5 * s
    return Grid(n=n, rule=rule, points=_frozen(points), weights=_frozen(weights))


def _check(g: Grid, pair: SampledPair):
    if len(pair) != g.n:
        raise DimensionError(f"Samples have length {len(pair)}, grid has n={g.n}")


def discrete_h1_inner(g: Grid, a: SampledPair, b: SampledPair) -> float:
    """<a, b> = sum_j w_j (a_j b_j + a'_j b'_j)."""
    _check(g, a)
    _check(g, b)
    return float(np.dot(g.weights, a.values * b.values + a.derivs * b.derivs))


def discrete_h1_norm_sq(g: Grid, pair: SampledPair) -> float:
    """||u||^2 = sum_j w_j (u_j^2 + u'_j^2)."""
    return discrete_h1_inner(g, pair, pair)
