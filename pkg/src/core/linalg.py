"""
Dense symmetric solves for the small Gram systems.

Cholesky is the normal path; a symmetrically pivoted LDL^T takes over when a
pivot is not positive. One step of iterative refinement follows every solve.
"""

import logging
from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np

from src.core.assemble import DenseSymmetricMatrix
from src.core.errors import DimensionError, NotPositiveDefiniteError, SingularMatrixError

logger = logging.getLogger(__name__)

MatrixLike = Union[DenseSymmetricMatrix, np.ndarray]


@dataclass(frozen=True)
class CholeskyFactor:
    lower: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]


@dataclass(frozen=True)
class LdltFactor:
    """P A P^T = L D L^T with unit lower L; perm holds P as an index array."""
    lower: np.ndarray = field(repr=False)
    diag: np.ndarray = field(repr=False)
    perm: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]


Factor = Union[CholeskyFactor, LdltFactor]


@dataclass(frozen=True)
class SolveInfo:
    method: str                 # "cholesky" or "ldlt"
    residual: float             # scaled residual before refinement
    refined_residual: float     # scaled residual after one refinement step


def _entries(A: MatrixLike) -> np.ndarray:
    if isinstance(A, DenseSymmetricMatrix):
        return A.entries
    a = np.asarray(A, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"Expected a square matrix, got shape {a.shape}")
    return a


# ─────────────────────────────────────────────────────────────
# Factorizations
# ─────────────────────────────────────────────────────────────

def cholesky(A: MatrixLike) -> CholeskyFactor:
    """A = L L^T, column by column. Raises NotPositiveDefiniteError(pivot)."""
    a = _entries(A)
    n = a.shape[0]
    L = np.zeros_like(a)
    for j in range(n):
        pivot = a[j, j] - np.dot(L[j, :j], L[j, :j])
        if not pivot > 0.0:
            raise NotPositiveDefiniteError(j)
        L[j, j] = np.sqrt(pivot)
        if j + 1 < n:
            L[j + 1:, j] = (a[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    L.setflags(write=False)
    return CholeskyFactor(lower=L)


def ldlt(A: MatrixLike) -> LdltFactor:
    """Symmetric diagonal pivoting: the largest remaining |diagonal| goes first."""
    a = np.array(_entries(A), dtype=float)
    n = a.shape[0]
    perm = np.arange(n)
    L = np.eye(n)
    d = np.zeros(n)
    scale = max(np.max(np.abs(a)) if n else 0.0, np.finfo(float).tiny)
    for j in range(n):
        p = j + int(np.argmax(np.abs(np.diag(a)[j:])))
        if p != j:
            a[[j, p], :] = a[[p, j], :]
            a[:, [j, p]] = a[:, [p, j]]
            L[[j, p], :j] = L[[p, j], :j]
            perm[[j, p]] = perm[[p, j]]
        d[j] = a[j, j]
        if abs(d[j]) <= np.finfo(float).eps * scale:
            raise SingularMatrixError(j)
        if j + 1 < n:
            col = a[j + 1:, j] / d[j]
            L[j + 1:, j] = col
            a[j + 1:, j + 1:] -= np.outer(col, a[j, j + 1:])
    L.setflags(write=False)
    d.setflags(write=False)
    perm.setflags(write=False)
    return LdltFactor(lower=L, diag=d, perm=perm)


def reconstruct(factor: Factor) -> np.ndarray:
    if isinstance(factor, CholeskyFactor):
        return factor.lower @ factor.lower.T
    pa = factor.lower @ np.diag(factor.diag) @ factor.lower.T
    out = np.empty_like(pa)
    out[np.ix_(factor.perm, factor.perm)] = pa
    return out


# ─────────────────────────────────────────────────────────────
# Triangular solves
# ─────────────────────────────────────────────────────────────

def _forward(L: np.ndarray, b: np.ndarray, unit: bool = False) -> np.ndarray:
    y = np.zeros_like(b)
    for i in range(len(b)):
        y[i] = b[i] - np.dot(L[i, :i], y[:i])
        if not unit:
            y[i] /= L[i, i]
    return y


def _backward(U: np.ndarray, b: np.ndarray, unit: bool = False) -> np.ndarray:
    n = len(b)
    x = np.zeros_like(b)
    for i in range(n - 1, -1, -1):
        x[i] = b[i] - np.dot(U[i, i + 1:], x[i + 1:])
        if not unit:
            x[i] /= U[i, i]
    return x


def solve(factor: Factor, rhs) -> np.ndarray:
    b = np.asarray(rhs, dtype=float)
    if b.shape != (factor.dim,):
        raise DimensionError(f"Right-hand side has shape {b.shape}, factor has dim {factor.dim}")
    if isinstance(factor, CholeskyFactor):
        return _backward(factor.lower.T, _forward(factor.lower, b))
    y = _forward(factor.lower, b[factor.perm], unit=True)
    z = _backward(factor.lower.T, y / factor.diag, unit=True)
    x = np.empty_like(z)
    x[factor.perm] = z
    return x


# ─────────────────────────────────────────────────────────────
# Diagnostics and driver
# ─────────────────────────────────────────────────────────────

def scaled_residual(A: MatrixLike, c: np.ndarray, F: np.ndarray) -> float:
    """||A c - F||_inf / (||A||_inf ||c||_inf + ||F||_inf)."""
    a = _entries(A)
    r = a @ c - F
    denom = np.max(np.sum(np.abs(a), axis=1)) * np.max(np.abs(c), initial=0.0) + np.max(np.abs(F), initial=0.0)
    if denom == 0.0:
        return 0.0
    return float(np.max(np.abs(r)) / denom)


def condition_estimate(A: MatrixLike, factor: Factor = None) -> float:
    """
    1-norm condition number estimate ||A||_1 * est(||A^-1||_1).

    Hager's method: a few solves with the factor instead of forming A^-1.
    """
    a = _entries(A)
    if factor is None:
        factor = _factor(a)
    n = a.shape[0]
    norm_a = float(np.max(np.sum(np.abs(a), axis=0)))
    x = np.full(n, 1.0 / n)
    est = 0.0
    for _ in range(5):
        y = solve(factor, x)
        est = float(np.sum(np.abs(y)))
        xi = np.where(y >= 0.0, 1.0, -1.0)
        z = solve(factor, xi)          # A symmetric: A^-T = A^-1
        j = int(np.argmax(np.abs(z)))
        if np.abs(z[j]) <= np.dot(z, x):
            break
        x = np.zeros(n)
        x[j] = 1.0
    return norm_a * est


def _factor(a: np.ndarray) -> Factor:
    try:
        return cholesky(a)
    except NotPositiveDefiniteError as e:
        logger.warning(f"Cholesky failed at pivot {e.pivot}; falling back to pivoted LDL^T")
        return ldlt(a)


def solve_system(A: MatrixLike, F) -> Tuple[np.ndarray, SolveInfo]:
    """Factor, solve, and apply one step of iterative refinement."""
    a = _entries(A)
    F = np.asarray(F, dtype=float)
    if F.shape != (a.shape[0],):
        raise DimensionError(f"Right-hand side has shape {F.shape}, matrix is {a.shape}")
    factor = _factor(a)
    c = solve(factor, F)
    before = scaled_residual(a, c, F)
    c = c + solve(factor, F - a @ c)
    after = scaled_residual(a, c, F)
    method = "cholesky" if isinstance(factor, CholeskyFactor) else "ldlt"
    return c, SolveInfo(method=method, residual=before, refined_residual=after)
