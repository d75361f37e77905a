"""
Closed-form action of R h(x) = int_{-1}^{1} e^{-|x-y|} h(y) dy on the boundary
deltas and on the hat functions, together with the derivative (R h)'.

For a basis function phi the response splits at x into
    left(x)  = int_{-1}^{x} e^{-(x-y)} phi(y) dy
    right(x) = int_{x}^{1}  e^{-(y-x)} phi(y) dy
so that q(x) = left + right and q'(x) = right - left. Every hat is made of at
most two linear pieces, and every piece contributes through one primitive,
int e^v (linear in v) dv over v <= 0, evaluated with expm1 so that short
pieces (large n) keep their digits.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from src.core.basis import SplineBasis
from src.core.errors import DimensionError
from src.core.grid import Grid, SampledPair

# Below this length the e^d (d - 1) + 1 term is summed as a series.
_SERIES_CUTOFF = 0.1
_SERIES_TERMS = 12


@dataclass(frozen=True)
class KernelMoments:
    C: np.ndarray = field(repr=False)       # int e^{y} phi_j dy
    D: np.ndarray = field(repr=False)       # int e^{-y} phi_j dy
    B_lj: np.ndarray = field(repr=False)    # right(x_l) for phi_j
    C_lj: np.ndarray = field(repr=False)    # left(x_l) for phi_j


@dataclass(frozen=True)
class SampleMatrices:
    """
    S and T are n x (m+2): columns 0-1 are the delta responses q_{-1}, q_0,
    columns 2.. the hat responses. H_n R h_m = S c and H_n (R h_m)' = T c.
    """
    S: np.ndarray = field(repr=False)
    T: np.ndarray = field(repr=False)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.S.shape

    def column(self, k: int) -> SampledPair:
        return SampledPair(self.S[:, k], self.T[:, k])


# ─────────────────────────────────────────────────────────────
# Primitive
# ─────────────────────────────────────────────────────────────

def _exp_linear_tail(d: np.ndarray) -> np.ndarray:
    """e^d (d - 1) + 1 = int_0^d t e^t dt, accurate for small d."""
    d = np.asarray(d, dtype=float)
    closed = d * np.exp(d) - np.expm1(d)
    series = np.zeros_like(d)
    term = d.copy()
    for k in range(2, _SERIES_TERMS + 2):
        term = term * d / k
        series = series + (k - 1) * term
    return np.where(np.abs(d) < _SERIES_CUTOFF, series, closed)


def _exp_linear(p0, slope, d):
    """int_0^d e^t (p0 + slope t) dt."""
    return p0 * np.expm1(d) + slope * _exp_linear_tail(d)


def _piece_parts(x, a, b, va, vb, h):
    """
    left/right parts at x of the linear piece on [a, b] running from va to vb.
    Shapes broadcast: x (N, 1), piece data (1, P).
    """
    slope = (vb - va) / h
    dl = np.clip(np.minimum(b, x) - a, 0.0, None)
    left = np.exp(np.minimum(a - x, 0.0)) * _exp_linear(va, slope, dl)
    dr = np.clip(b - np.maximum(a, x), 0.0, None)
    right = np.exp(np.minimum(x - b, 0.0)) * _exp_linear(vb, -slope, dr)
    return left, right


def _one_sided(b: SplineBasis, xs) -> Tuple[np.ndarray, np.ndarray]:
    """left[i, k], right[i, k] for every point xs[i] and hat k (0-based)."""
    x = np.asarray(xs, dtype=float).reshape(-1, 1)
    t = b.knots
    h = b.half_width
    m = b.m
    left = np.zeros((x.shape[0], m))
    right = np.zeros((x.shape[0], m))

    # rising pieces [t_{k-1}, t_k] of hats k = 1..m-1
    rl, rr = _piece_parts(x, t[None, :-1], t[None, 1:], 0.0, 1.0, h)
    left[:, 1:] += rl
    right[:, 1:] += rr
    # falling pieces [t_k, t_{k+1}] of hats k = 0..m-2
    fl, fr = _piece_parts(x, t[None, :-1], t[None, 1:], 1.0, 0.0, h)
    left[:, :-1] += fl
    right[:, :-1] += fr
    return left, right


# ─────────────────────────────────────────────────────────────
# Operations
# ─────────────────────────────────────────────────────────────

def q_delta(which: int, x: float) -> float:
    """Response of delta(x+1) (which=-1) or delta(x-1) (which=0)."""
    if which == -1:
        return float(np.exp(-(x + 1.0)))
    if which == 0:
        return float(np.exp(-(1.0 - x)))
    raise ValueError(f"which must be -1 or 0, got {which}")


def q_delta_deriv(which: int, x: float) -> float:
    sign = -1.0 if which == -1 else 1.0
    return sign * q_delta(which, x)


def q_basis(g: Grid, b: SplineBasis, j: int, x: float) -> float:
    """q_j(x) = int e^{-|x-y|} phi_j(y) dy in closed form (1-based j)."""
    b.check_index(j)
    left, right = _one_sided(b, [x])
    return float(left[0, j - 1] + right[0, j - 1])


def q_basis_deriv(g: Grid, b: SplineBasis, j: int, x: float) -> float:
    """q_j'(x) = e^x int_x^1 e^{-y} phi_j - e^{-x} int_{-1}^x e^y phi_j."""
    b.check_index(j)
    left, right = _one_sided(b, [x])
    return float(right[0, j - 1] - left[0, j - 1])


def kernel_moments(g: Grid, b: SplineBasis) -> KernelMoments:
    _check_consistent(g, b)
    left, right = _one_sided(b, g.points)
    ends_left, ends_right = _one_sided(b, [-1.0, 1.0])
    return KernelMoments(
        C=np.e * ends_left[1],
        D=np.e * ends_right[0],
        B_lj=right,
        C_lj=left,
    )


def build_sample_matrices(g: Grid, b: SplineBasis) -> SampleMatrices:
    _check_consistent(g, b)
    x = g.points
    left, right = _one_sided(b, x)

    S = np.empty((g.n, b.m + 2))
    T = np.empty((g.n, b.m + 2))
    S[:, 0] = np.exp(-(1.0 + x))
    S[:, 1] = np.exp(-(1.0 - x))
    T[:, 0] = -S[:, 0]
    T[:, 1] = S[:, 1]
    S[:, 2:] = left + right
    T[:, 2:] = right - left
    S.setflags(write=False)
    T.setflags(write=False)
    return SampleMatrices(S=S, T=T)


def _check_consistent(g: Grid, b: SplineBasis):
    if b.m != g.m:
        raise DimensionError(f"Basis has m={b.m} but grid n={g.n} needs m={g.m}")
