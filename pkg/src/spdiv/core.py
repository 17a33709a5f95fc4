"""Diversity of a point subset through its similarity matrix.

For a subset S = (x_1, ..., x_m) of a finite metric space and kernel
parameter theta > 0, the similarity matrix is Z[i][j] =
exp(-theta * d(x_i, x_j)).  The diversity value is the component sum of the
weight vector w solving Z w = 1, equivalently 1' Z^{-1} 1.  Since the
objective depends on theta and the distances only through their products,
rescaling all distances by c while dividing theta by c leaves it unchanged.

The solve is dense Gaussian elimination with partial pivoting (see
:mod:`spdiv.backend`); a solution is accepted only if the infinity-norm
residual stays below ``params.TAU_SOLVE``.  Singular or near-singular
matrices (duplicate points) are refused rather than regularized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import params
from .backend import solve_unit
from .errors import (
    DegenerateDenominator,
    DuplicateIndex,
    EmptySubset,
    IndexOutOfRange,
    SingularSimilarity,
)
from .metric import FiniteMetric

__all__ = [
    "SimilarityMatrix",
    "WeightVector",
    "DominanceCertificate",
    "similarity_matrix",
    "sp_value",
    "sp_from_similarity",
    "sp_uniform",
    "sp_two_point",
    "sp_one_edge_closed_form",
    "dominance_certificate",
]


@dataclass(frozen=True)
class SimilarityMatrix:
    """Kernel matrix of a subset: unit diagonal, symmetric, entries in (0, 1]."""

    subset: tuple[int, ...]
    theta: float
    values: np.ndarray

    @property
    def m(self) -> int:
        return len(self.subset)


@dataclass(frozen=True)
class WeightVector:
    """Solution of Z w = 1 with its achieved residual and component sum."""

    weights: np.ndarray
    residual_inf: float
    sp_value: float


@dataclass(frozen=True)
class DominanceCertificate:
    """Row-dominance check for Z = I + B.

    ``dominant`` (largest off-diagonal absolute row sum below one) certifies
    invertibility; a failed check certifies nothing.
    """

    b_norm_inf: float
    dominant: bool


def _checked_subset(subset: Sequence[int], n: int) -> tuple[int, ...]:
    out = []
    seen = set()
    for raw in subset:
        i = int(raw)
        if not (0 <= i < n):
            raise IndexOutOfRange(i, n)
        if i in seen:
            raise DuplicateIndex(i)
        seen.add(i)
        out.append(i)
    return tuple(out)


def similarity_matrix(metric: FiniteMetric, subset: Sequence[int], theta: float) -> SimilarityMatrix:
    """Kernel matrix exp(-theta * d) restricted to the given subset order."""
    if not (theta > 0):
        raise ValueError(f"theta must be positive, got {theta}")
    idx = _checked_subset(subset, metric.n)
    sub = metric.d[np.ix_(idx, idx)] if idx else np.zeros((0, 0))
    z = np.exp(-theta * sub)
    z.setflags(write=False)
    return SimilarityMatrix(subset=idx, theta=float(theta), values=z)


def sp_from_similarity(z: np.ndarray) -> WeightVector:
    """Solve Z w = 1 and package the result; raises on singular input."""
    z = np.asarray(z, dtype=np.float64)
    m = z.shape[0]
    if m == 0:
        raise EmptySubset()
    w, residual, min_pivot = solve_unit(z)
    if min_pivot < params.TAU_PIVOT:
        raise SingularSimilarity(
            f"pivot {min_pivot:.3e} below {params.TAU_PIVOT:.1e}; "
            "duplicate or near-duplicate points?"
        )
    if not (residual <= params.TAU_SOLVE):
        raise SingularSimilarity(
            f"solve residual {residual:.3e} exceeds {params.TAU_SOLVE:.1e}"
        )
    w = np.asarray(w)
    w.setflags(write=False)
    return WeightVector(weights=w, residual_inf=float(residual), sp_value=float(w.sum()))


def sp_value(metric: FiniteMetric, subset: Sequence[int], theta: float) -> WeightVector:
    """Diversity of a nonempty subset; the empty set is the caller's convention."""
    if len(subset) == 0:
        raise EmptySubset()
    return sp_from_similarity(similarity_matrix(metric, subset, theta).values)


def sp_uniform(k: int, s: float) -> float:
    """Diversity of k points whose pairwise similarities all equal s.

    The weight vector is constant by symmetry, each component 1/(1+(k-1)s),
    giving the closed form k/(1+(k-1)s).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not (0.0 <= s < 1.0):
        raise ValueError(f"s must lie in [0, 1), got {s}")
    return k / (1.0 + (k - 1) * s)


def sp_two_point(s: float) -> float:
    """Diversity of a pair with similarity s: both weights are 1/(1+s)."""
    if not (0.0 <= s < 1.0):
        raise ValueError(f"s must lie in [0, 1), got {s}")
    return 2.0 / (1.0 + s)


def sp_one_edge_closed_form(q: float, r: float) -> float:
    """Closed form for the 3-point pattern [[1,q,r],[q,1,r],[r,r,1]].

    With weights (a, a, b) the system reduces to (1+q)a + rb = 1 and
    2ra + b = 1, giving the value 2a + b = (3+q-4r) / (1+q-2r^2).  Used as an
    independent cross-check of the solver.
    """
    denom = 1.0 + q - 2.0 * r * r
    if abs(denom) < params.TAU_PIVOT:
        raise DegenerateDenominator(denom)
    return (3.0 + q - 4.0 * r) / denom


def dominance_certificate(z) -> DominanceCertificate:
    """Largest off-diagonal absolute row sum of Z = I + B.

    Below one, the solve is guaranteed to succeed (strict row dominance);
    at or above one the test is inconclusive.
    """
    values = z.values if isinstance(z, SimilarityMatrix) else np.asarray(z, dtype=np.float64)
    if values.size == 0:
        return DominanceCertificate(b_norm_inf=0.0, dominant=True)
    off = np.abs(values - np.diag(np.diagonal(values)))
    b_norm = float(off.sum(axis=1).max())
    return DominanceCertificate(b_norm_inf=b_norm, dominant=b_norm < 1.0)
