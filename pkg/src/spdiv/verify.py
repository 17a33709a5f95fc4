"""Numerical checks of the analytic facts behind the two-distance instances.

Everything here operates on subsets of an encoded graph metric, where
off-diagonal distances are ``scale`` (edges) or ``2*scale`` (non-edges).
Stretching one edge distance t from ``scale`` to ``2*scale`` and tracking
the diversity F(t) gives a one-parameter family whose behavior is known in
closed form:

* F'(t) = 2*theta0*exp(-theta0*t) * w_a(t) * w_b(t), where (a, b) is the
  stretched pair (differentiate Z(t)^-1 Z(t) = I; only the (a,b)/(b,a)
  entries of Z'(t) are nonzero).
* All weight components stay above 2/3: off-diagonal similarities are at
  most 1/(4k), so the off-diagonal row sums stay below 1/4 and the geometric
  tail of the expansion of (I+B)^-1 removes at most 1/3 from each component.
* Hence F is strictly increasing on the whole stretch.

The functions below check those statements on concrete instances: the
derivative formula against central finite differences, the weight floor, the
strict increase across a sample grid, and the partial-sum identity
(I+B) S_M = I - (-B)^(M+1) for the series tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import params
from .backend import solve_unit
from .core import SimilarityMatrix, dominance_certificate, similarity_matrix, sp_from_similarity
from .errors import DominanceViolated, NonzeroDiagonal, NotDominant, SingularSimilarity
from .metric import FiniteMetric

__all__ = [
    "ScanSample",
    "DeformationReport",
    "deformed_similarity",
    "deformation_scan",
    "derivative_identity_check",
    "neumann_partial_sums",
    "positivity_bound_check",
    "invertibility_criterion",
]


@dataclass(frozen=True)
class ScanSample:
    t: float
    value: float                 # F(t)
    derivative_formula: float    # 2*theta0*exp(-theta0*t)*w_a*w_b
    derivative_fd: float         # central difference of F at t
    min_weight: float


@dataclass(frozen=True)
class DeformationReport:
    pair: tuple[int, int]
    theta0: float
    scale: float
    samples: tuple[ScanSample, ...]
    strictly_increasing: bool
    min_weight_overall: float
    max_row_dominance: float     # worst off-diagonal row sum seen across the scan

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "theta0": self.theta0,
            "scale": self.scale,
            "samples": [
                {
                    "t": s.t,
                    "value": s.value,
                    "derivative_formula": s.derivative_formula,
                    "derivative_fd": s.derivative_fd,
                    "min_weight": s.min_weight,
                }
                for s in self.samples
            ],
            "strictly_increasing": self.strictly_increasing,
            "min_weight_overall": self.min_weight_overall,
            "max_row_dominance": self.max_row_dominance,
        }


def _pair_positions(subset: tuple[int, ...], pair: tuple[int, int]) -> tuple[int, int]:
    a, b = pair
    if a == b or a not in subset or b not in subset:
        raise ValueError(f"pair {pair} must name two distinct members of the subset")
    return subset.index(a), subset.index(b)


def deformed_similarity(
    base: SimilarityMatrix, pair: tuple[int, int], t: float
) -> np.ndarray:
    """Copy of the subset similarity matrix with the pair's distance set to t."""
    ia, ib = _pair_positions(base.subset, pair)
    z = np.array(base.values, dtype=np.float64)
    z[ia, ib] = z[ib, ia] = math.exp(-base.theta * t)
    return z


def _check_two_distance(metric: FiniteMetric, subset: tuple[int, ...], scale: float) -> None:
    for i, u in enumerate(subset):
        for v in subset[i + 1 :]:
            duv = metric.d[u, v]
            if duv != scale and duv != 2 * scale:
                raise ValueError(
                    f"d({u},{v}) = {duv!r} is neither {scale!r} nor {2 * scale!r}; "
                    "not a two-distance instance"
                )


def deformation_scan(
    metric: FiniteMetric,
    subset,
    pair: tuple[int, int],
    theta0: float,
    scale: float,
    num_samples: int = params.DEFAULT_SCAN_SAMPLES,
) -> DeformationReport:
    """Stretch the pair's distance to ``2*scale`` across a uniform grid.

    At every grid point the weight vector is solved, the closed-form
    derivative and a central difference of F are recorded, and row dominance
    is re-verified (:class:`DominanceViolated` if it ever fails, which the
    parameter calibration rules out for encoded instances).

    The pair must currently sit at ``scale`` or ``2*scale``; the grid runs
    from the current distance (a single point when already fully
    stretched).
    """
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    base = similarity_matrix(metric, subset, theta0)
    a, b = int(pair[0]), int(pair[1])
    ia, ib = _pair_positions(base.subset, (a, b))
    _check_two_distance(metric, base.subset, scale)

    start = float(metric.d[a, b])
    stop = 2.0 * float(scale)
    if start == stop:
        ts = np.array([stop])
    elif start == float(scale):
        ts = np.linspace(start, stop, num_samples)
    else:
        raise ValueError(f"pair distance {start!r} must be {scale!r} or {2 * scale!r}")

    def value_at(t: float) -> float:
        return sp_from_similarity(deformed_similarity(base, (a, b), t)).sp_value

    h = params.FD_STEP
    samples = []
    worst_dominance = 0.0
    for t in ts:
        z = deformed_similarity(base, (a, b), t)
        cert = dominance_certificate(z)
        worst_dominance = max(worst_dominance, cert.b_norm_inf)
        if not cert.dominant:
            raise DominanceViolated(float(t), cert.b_norm_inf)
        wv = sp_from_similarity(z)
        w = wv.weights
        formula = 2.0 * theta0 * math.exp(-theta0 * t) * w[ia] * w[ib]
        fd = (value_at(t + h) - value_at(t - h)) / (2.0 * h)
        samples.append(
            ScanSample(
                t=float(t),
                value=wv.sp_value,
                derivative_formula=float(formula),
                derivative_fd=float(fd),
                min_weight=float(w.min()),
            )
        )

    values = [s.value for s in samples]
    strictly_increasing = all(x < y for x, y in zip(values, values[1:]))
    return DeformationReport(
        pair=(a, b),
        theta0=float(theta0),
        scale=float(scale),
        samples=tuple(samples),
        strictly_increasing=strictly_increasing,
        min_weight_overall=min(s.min_weight for s in samples),
        max_row_dominance=worst_dominance,
    )


def derivative_identity_check(report: DeformationReport, tol: float = params.FD_RTOL) -> bool:
    """Formula and finite difference agree at every interior grid point.

    Agreement is relative to max(1, |formula|); scans with no interior
    points pass vacuously.
    """
    interior = report.samples[1:-1]
    return all(
        abs(s.derivative_formula - s.derivative_fd) <= tol * max(1.0, abs(s.derivative_formula))
        for s in interior
    )


def neumann_partial_sums(z, order: int) -> list[tuple[int, float]]:
    """Deviations ||(I+B) S_m - I||_inf for partial sums S_m of sum (-B)^m.

    Requires a dominant matrix (B's off-diagonal row sums below one), which
    makes the series converge; the deviation at order m then equals
    ||(-B)^(m+1)||_inf and is bounded by the dominance norm to the (m+1)-th
    power.
    """
    values = z.values if isinstance(z, SimilarityMatrix) else np.asarray(z, dtype=np.float64)
    cert = dominance_certificate(values)
    if not cert.dominant:
        raise NotDominant(cert.b_norm_inf)
    m = values.shape[0]
    eye = np.eye(m)
    b = values - eye
    partial = np.eye(m)
    term = np.eye(m)
    out = []
    for i in range(order + 1):
        if i > 0:
            term = term @ (-b)
            partial = partial + term
        deviation = float(np.abs(values @ partial - eye).sum(axis=1).max())
        out.append((i, deviation))
    return out


def positivity_bound_check(
    metric: FiniteMetric,
    subset,
    theta0: float,
    scale: float,
    num_samples: int = params.DEFAULT_SCAN_SAMPLES,
    pair: tuple[int, int] | None = None,
) -> tuple[float, bool]:
    """Smallest weight component across a deformation scan, against the 2/3 floor.

    When no pair is given, the first subset pair at distance ``scale`` is
    stretched; a subset with no such pair is evaluated once, undeformed.
    Returns (min_weight, min_weight > 2/3).
    """
    base = similarity_matrix(metric, subset, theta0)
    _check_two_distance(metric, base.subset, scale)
    if pair is None:
        pair = next(
            (
                (u, v)
                for i, u in enumerate(base.subset)
                for v in base.subset[i + 1 :]
                if metric.d[u, v] == scale
            ),
            None,
        )
    if pair is None:
        min_w = float(sp_from_similarity(base.values).weights.min())
    else:
        report = deformation_scan(metric, subset, pair, theta0, scale, num_samples)
        min_w = report.min_weight_overall
    return min_w, min_w > params.WEIGHT_FLOOR


def invertibility_criterion(b) -> bool:
    """Row-dominance invertibility test for I + B, cross-checked by a solve.

    B must have an exactly zero diagonal.  Returns True when every
    off-diagonal absolute row sum is below one; in that case a unit solve of
    (I+B) x = e_1 is run and must succeed.  False certifies nothing.
    """
    b = np.asarray(b, dtype=np.float64)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ValueError(f"B must be square, got shape {b.shape}")
    diag = np.diagonal(b)
    if (diag != 0.0).any():
        i = int(np.nonzero(diag != 0.0)[0][0])
        raise NonzeroDiagonal(i, float(b[i, i]))
    if b.shape[0] == 0:
        return True
    row_sums = np.abs(b).sum(axis=1)
    if not (row_sums < 1.0).all():
        return False

    m = b.shape[0]
    z = np.eye(m) + b
    w, residual, min_pivot = solve_unit(z)  # rhs is all-ones; any rhs exercises the pivots
    if min_pivot < params.TAU_PIVOT or not (residual <= params.TAU_SOLVE):
        raise SingularSimilarity(
            "row-dominant matrix failed to solve; this contradicts the criterion "
            f"(pivot {min_pivot:.3e}, residual {residual:.3e})"
        )
    return True
