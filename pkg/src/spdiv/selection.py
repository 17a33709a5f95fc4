"""Cardinality-constrained diversity maximization: exhaustive and greedy.

The exact search enumerates every size-k subset (NP-hard in general, so a
cap guards the instance size) and the greedy variants trade optimality for
polynomial time.  All tie-breaks are lexicographic so results are
reproducible; subsets whose similarity matrix is singular are skipped with
value treated as -inf rather than aborting the search.

The empty subset has diversity 0 by convention.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import params
from .backend import score_subsets
from .core import sp_from_similarity, sp_value
from .errors import InstanceTooLarge, InvalidK, SingularSimilarity
from .metric import FiniteMetric

__all__ = ["SelectionResult", "DecisionResult", "exact_select", "greedy_drop", "greedy_add", "decide"]

_BATCH = 4096


@dataclass(frozen=True)
class SelectionResult:
    subset: tuple[int, ...]
    value: float
    evaluated: int          # subsets successfully scored
    skipped: int            # singular candidates passed over
    method: str


@dataclass(frozen=True)
class DecisionResult:
    """Outcome of the threshold decision, with the maximizer as evidence."""

    satisfied: bool
    witness: Optional[tuple[int, ...]]
    best_value: float
    best_subset: tuple[int, ...]
    threshold: float
    evaluated: int
    skipped: int


def _check_k(k: int, n: int) -> int:
    if not (0 <= k <= n):
        raise InvalidK(k, n, lo=0)
    return int(k)


def _full_similarity(metric: FiniteMetric, theta: float) -> np.ndarray:
    if not (theta > 0):
        raise ValueError(f"theta must be positive, got {theta}")
    return np.exp(-theta * metric.d)


def _subset_sp(sim: np.ndarray, subset: list[int]) -> Optional[float]:
    """Diversity of a subset of the precomputed ground similarity matrix;
    None when the submatrix is singular."""
    if not subset:
        return 0.0
    try:
        return sp_from_similarity(sim[np.ix_(subset, subset)]).sp_value
    except SingularSimilarity:
        return None


def exact_select(
    metric: FiniteMetric, k: int, theta: float, cap: Optional[int] = None
) -> SelectionResult:
    """Best size-k subset by exhaustive enumeration.

    Ties go to the lexicographically smallest index tuple (enumeration order
    makes that the first maximum encountered).  Raises
    :class:`InstanceTooLarge` when C(n, k) exceeds the cap and
    :class:`SingularSimilarity` if every candidate subset was singular.
    """
    k = _check_k(k, metric.n)
    if k == 0:
        return SelectionResult(subset=(), value=0.0, evaluated=1, skipped=0, method="exact")
    cap = params.enumeration_cap() if cap is None else cap
    total = math.comb(metric.n, k)
    if total > cap:
        raise InstanceTooLarge(total, cap)

    sim = _full_similarity(metric, theta)
    best_value = -np.inf
    best_subset: Optional[tuple[int, ...]] = None
    evaluated = 0
    skipped = 0

    combos = itertools.combinations(range(metric.n), k)
    while True:
        chunk = list(itertools.islice(combos, _BATCH))
        if not chunk:
            break
        idx = np.asarray(chunk, dtype=np.int64)
        values, pivots, residuals = score_subsets(sim, idx)
        ok = (pivots >= params.TAU_PIVOT) & (residuals <= params.TAU_SOLVE)
        skipped += int((~ok).sum())
        evaluated += int(ok.sum())
        if ok.any():
            masked = np.where(ok, values, -np.inf)
            pos = int(np.argmax(masked))
            if masked[pos] > best_value:
                best_value = float(masked[pos])
                best_subset = tuple(int(x) for x in chunk[pos])

    if best_subset is None:
        raise SingularSimilarity(f"every size-{k} subset has a singular similarity matrix")
    return SelectionResult(
        subset=best_subset, value=best_value, evaluated=evaluated, skipped=skipped, method="exact"
    )


def greedy_drop(metric: FiniteMetric, k: int, theta: float) -> SelectionResult:
    """Shrink from the full set, each round removing the element whose
    removal maximizes the remaining diversity (ties: smallest index).

    Polynomial time, no optimality guarantee.  The full set must be solvable
    to score the first round.
    """
    k = _check_k(k, metric.n)
    sim = _full_similarity(metric, theta)
    current = list(range(metric.n))
    # Scoring the full set first surfaces duplicate-point inputs immediately.
    value = None if metric.n == 0 else sp_value(metric, current, theta).sp_value
    evaluated = 0 if value is None else 1
    skipped = 0

    while len(current) > k:
        best_removal = None
        best_value = -np.inf
        for pos, element in enumerate(current):
            remainder = current[:pos] + current[pos + 1 :]
            score = _subset_sp(sim, remainder)
            if score is None:
                skipped += 1
                continue
            evaluated += 1
            if score > best_value:
                best_value = score
                best_removal = pos
        if best_removal is None:
            raise SingularSimilarity(
                f"all size-{len(current) - 1} remainders are singular"
            )
        del current[best_removal]
        value = best_value

    return SelectionResult(
        subset=tuple(current),
        value=0.0 if k == 0 else float(value),
        evaluated=evaluated,
        skipped=skipped,
        method="greedy-drop",
    )


def greedy_add(metric: FiniteMetric, k: int, theta: float) -> SelectionResult:
    """Grow from the lexicographically smallest point, each round adding the
    element that maximizes the augmented diversity (ties: smallest index)."""
    k = _check_k(k, metric.n)
    if k == 0:
        return SelectionResult(subset=(), value=0.0, evaluated=1, skipped=0, method="greedy-add")
    sim = _full_similarity(metric, theta)
    current = [0]
    value = _subset_sp(sim, current)
    if value is None:
        raise SingularSimilarity("the seed singleton is singular")  # unreachable: 1x1 is [1]
    evaluated = 1
    skipped = 0

    while len(current) < k:
        chosen = None
        best_value = -np.inf
        members = set(current)
        for candidate in range(metric.n):
            if candidate in members:
                continue
            augmented = sorted(current + [candidate])
            score = _subset_sp(sim, augmented)
            if score is None:
                skipped += 1
                continue
            evaluated += 1
            if score > best_value:
                best_value = score
                chosen = candidate
        if chosen is None:
            raise SingularSimilarity(
                f"no solvable extension of {tuple(current)} exists"
            )
        current = sorted(current + [chosen])
        value = best_value

    return SelectionResult(
        subset=tuple(current),
        value=float(value),
        evaluated=evaluated,
        skipped=skipped,
        method="greedy-add",
    )


def decide(
    metric: FiniteMetric, k: int, theta: float, threshold: float, cap: Optional[int] = None
) -> DecisionResult:
    """Is there a size-k subset with diversity at least the threshold?

    Exhaustive: compares the exact maximum against ``threshold`` with
    ``params.TAU_DECIDE`` slack and returns the maximizer as witness on yes.
    """
    result = exact_select(metric, k, theta, cap=cap)
    satisfied = result.value >= threshold - params.TAU_DECIDE
    return DecisionResult(
        satisfied=satisfied,
        witness=result.subset if satisfied else None,
        best_value=result.value,
        best_subset=result.subset,
        threshold=float(threshold),
        evaluated=result.evaluated,
        skipped=result.skipped,
    )
