"""Finite metric spaces, undirected graphs, and the two-distance graph encoding.

A graph G on n vertices together with a subset size k and a kernel parameter
theta0 is turned into a metric in which adjacent vertices sit at distance
``scale`` and non-adjacent ones at ``2 * scale``, with

    scale = ceil(ln(4k) / theta0).

Because ``2*scale <= scale + scale``, the triangle inequality holds with
equality at worst, so the encoding is always a metric.  The induced
off-diagonal similarities ``exp(-theta0*scale)`` and ``exp(-2*theta0*scale)``
are then at most ``1/(4k)`` and ``1/(16k^2)``.

Vertices are 0-indexed everywhere.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

from . import params
from .errors import (
    AsymmetricEntry,
    InvalidK,
    InvalidTheta,
    NegativeDistance,
    NonzeroDiagonal,
    ParseError,
    SelfLoop,
    TriangleViolation,
    VertexOutOfRange,
)

__all__ = [
    "FiniteMetric",
    "Graph",
    "ReductionInstance",
    "validate_metric",
    "load_metric_csv",
    "encode_graph",
    "distance_scale",
    "parse_graph",
    "serialize_graph",
    "load_graph",
]


@dataclass(frozen=True)
class FiniteMetric:
    """A validated n-point metric: symmetric, zero diagonal, triangle-safe.

    Construct through :func:`validate_metric`; the array is frozen so
    instances can be shared freely.
    """

    n: int
    d: np.ndarray

    def distance(self, i: int, j: int) -> float:
        return float(self.d[i, j])

    def rescaled(self, factor: float) -> "FiniteMetric":
        """The same space with every distance multiplied by factor > 0."""
        if factor <= 0:
            raise ValueError(f"rescale factor must be positive, got {factor}")
        return _freeze_metric(self.d * factor)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are stored as sorted (u, v) pairs."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) not sorted or out of range for n={self.n}")

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        return Graph(n, frozenset((min(u, v), max(u, v)) for u, v in edges))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency_masks(self) -> list[int]:
        """Per-vertex neighbor bitmasks, for fast independence checks."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks


@dataclass(frozen=True)
class ReductionInstance:
    """A graph instance bundled with its derived encoding parameters.

    scale            distance between adjacent vertices (non-adjacent: 2*scale)
    edge_sim         similarity of adjacent vertices, exp(-theta0*scale)
    nonedge_sim      similarity of non-adjacent vertices, edge_sim**2
    threshold        diversity value of an edge-free k-subset,
                     k / (1 + (k-1)*nonedge_sim); the decision cutoff
    """

    graph: Graph
    k: int
    theta0: float
    scale: int
    edge_sim: float
    nonedge_sim: float
    threshold: float


def _freeze_metric(d: np.ndarray) -> FiniteMetric:
    d = np.array(d, dtype=np.float64)
    d.setflags(write=False)
    return FiniteMetric(n=d.shape[0], d=d)


def validate_metric(d, tolerance: float = params.TAU_METRIC) -> FiniteMetric:
    """Check the metric axioms and wrap the matrix in a :class:`FiniteMetric`.

    Axioms are checked in a fixed order (diagonal, symmetry, nonnegativity,
    triangle inequality) and the first violation is raised with its indices.
    The triangle inequality is allowed up to ``tolerance`` absolute slack;
    pass ``tolerance=0.0`` for exact checks on generated instances.
    """
    d = np.asarray(d, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {d.shape}")
    if d.size and not np.isfinite(d).all():
        i, j = np.argwhere(~np.isfinite(d))[0]
        raise ValueError(f"distance d[{i}][{j}] is not finite")
    n = d.shape[0]

    diag = np.diagonal(d)
    if (diag != 0.0).any():
        i = int(np.nonzero(diag != 0.0)[0][0])
        raise NonzeroDiagonal(i, float(d[i, i]))
    bad = np.argwhere(d != d.T)
    if bad.size:
        i, j = (int(x) for x in bad[0])
        raise AsymmetricEntry(i, j)
    bad = np.argwhere(d < 0.0)
    if bad.size:
        i, j = (int(x) for x in bad[0])
        raise NegativeDistance(i, j)

    if n >= 3:
        # through[i, k, j] = d[i, k] + d[k, j]
        through = d[:, :, None] + d[None, :, :]
        slack_ok = d <= through.min(axis=1) + tolerance
        if not slack_ok.all():
            i, j = (int(x) for x in np.argwhere(~slack_ok)[0])
            k = int(np.argmin(through[i, :, j]))
            raise TriangleViolation(i, j, k)

    return _freeze_metric(d)


def load_metric_csv(path, tolerance: float = params.TAU_METRIC) -> FiniteMetric:
    """Read an n-by-n CSV of distances (no header) and validate it."""
    d = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    return validate_metric(d, tolerance=tolerance)


def distance_scale(k: int, theta0: float) -> int:
    """Integer distance scale ceil(ln(4k)/theta0), with a guard against
    log() landing a rounding error above an exact integer."""
    x = math.log(4.0 * k) / theta0
    return max(1, math.ceil(x - params.SCALE_CEIL_EPS))


def encode_graph(g: Graph, k: int, theta0: float) -> tuple[FiniteMetric, ReductionInstance]:
    """Encode a graph as a two-distance metric calibrated for subset size k.

    Distances: 0 on the diagonal, ``scale`` across edges, ``2*scale``
    otherwise.  Returns the metric together with the derived instance
    parameters; the metric is re-validated exactly (zero tolerance).
    """
    try:
        k = operator.index(k)
    except TypeError:
        raise InvalidK(k, g.n) from None
    if not (1 <= k <= g.n):
        raise InvalidK(k, g.n)
    if not (theta0 > 0):
        raise InvalidTheta(theta0)

    scale = distance_scale(k, theta0)
    d = np.full((g.n, g.n), 2.0 * scale, dtype=np.float64)
    np.fill_diagonal(d, 0.0)
    for u, v in g.edges:
        d[u, v] = d[v, u] = float(scale)
    metric = validate_metric(d, tolerance=0.0)

    edge_sim = math.exp(-theta0 * scale)
    nonedge_sim = edge_sim * edge_sim
    threshold = k / (1.0 + (k - 1) * nonedge_sim)
    instance = ReductionInstance(
        graph=g,
        k=k,
        theta0=float(theta0),
        scale=scale,
        edge_sim=edge_sim,
        nonedge_sim=nonedge_sim,
        threshold=threshold,
    )
    return metric, instance


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header line ``n m`` then m lines ``u v``.

    Anything after '#' on a line is a comment; blank lines are skipped.
    Duplicate edges are collapsed.  Errors carry the 1-based line number.
    """
    header = None
    edges = set()
    expected = None
    n = 0
    seen_edges = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise ParseError(lineno, f"expected header 'n m', got {raw!r}")
            try:
                n, expected = int(fields[0]), int(fields[1])
            except ValueError:
                raise ParseError(lineno, f"header values must be integers, got {raw!r}") from None
            if n < 0 or expected < 0:
                raise ParseError(lineno, "header values must be nonnegative")
            header = lineno
            continue
        if len(fields) != 2:
            raise ParseError(lineno, f"expected edge 'u v', got {raw!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(lineno, f"edge endpoints must be integers, got {raw!r}") from None
        seen_edges += 1
        if seen_edges > expected:
            raise ParseError(lineno, f"more than the declared {expected} edges")
        if u == v:
            raise SelfLoop(lineno)
        for w in (u, v):
            if not (0 <= w < n):
                raise VertexOutOfRange(lineno, w, n)
        edges.add((min(u, v), max(u, v)))

    if header is None:
        raise ParseError(1, "missing header line 'n m'")
    if seen_edges < expected:
        raise ParseError(header, f"declared {expected} edges but found {seen_edges}")
    return Graph(n, frozenset(edges))


def serialize_graph(g: Graph) -> str:
    """Inverse of :func:`parse_graph`; edges are written in sorted order."""
    lines = [f"{g.n} {len(g.edges)}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())
