"""
Normal equations A c = F of the discrete least-squares problem.

A is the Gram matrix of the operator responses H_n q_k under the discrete H1
inner product, i.e. A = S^T W S + T^T W T, and F pairs the samples of f and f'
with the same responses.
"""

from dataclasses import dataclass, field

import numpy as np

from src.core.errors import DimensionError
from src.core.grid import Grid, SampledPair, discrete_h1_inner
from src.core.operator import SampleMatrices


@dataclass(frozen=True)
class DenseSymmetricMatrix:
    """Square matrix whose lower triangle mirrors the upper one exactly."""
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"Expected a square matrix, got shape {a.shape}")
        upper = np.triu(a)
        sym = upper + np.triu(a, 1).T
        sym.setflags(write=False)
        object.__setattr__(self, "entries", sym)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other):
        return self.entries @ other


@dataclass(frozen=True)
class NormalSystem:
    A: DenseSymmetricMatrix
    F: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.A.dim


def _check(g: Grid, sm: SampleMatrices, f_samples: SampledPair = None):
    if sm.S.shape != sm.T.shape or sm.S.shape[0] != g.n:
        raise DimensionError(f"Sample matrices {sm.S.shape}/{sm.T.shape} do not match n={g.n}")
    if f_samples is not None and len(f_samples) != g.n:
        raise DimensionError(f"f samples have length {len(f_samples)}, grid has n={g.n}")


def build_system(g: Grid, sm: SampleMatrices, f_samples: SampledPair) -> NormalSystem:
    _check(g, sm, f_samples)
    w = g.weights
    WS = sm.S * w[:, None]
    WT = sm.T * w[:, None]
    A = WS.T @ sm.S + WT.T @ sm.T
    F = WS.T @ f_samples.values + WT.T @ f_samples.derivs
    return NormalSystem(A=DenseSymmetricMatrix(A), F=F)


def gram_via_inner_product(g: Grid, sm: SampleMatrices) -> DenseSymmetricMatrix:
    """Same Gram matrix, entry by entry through the discrete inner product."""
    _check(g, sm)
    k = sm.S.shape[1]
    columns = [sm.column(i) for i in range(k)]
    A = np.zeros((k, k))
    for i in range(k):
        for j in range(i, k):
            A[i, j] = discrete_h1_inner(g, columns[i], columns[j])
    return DenseSymmetricMatrix(A)
