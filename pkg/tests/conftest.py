import numpy as np
import pytest

from spdiv.metric import Graph, encode_graph, validate_metric
from spdiv.reduction import SplitMix64, random_graph


@pytest.fixture
def demo_graph():
    """Path 0-1-2 plus the isolated vertex 3; its unique size-3 independent
    set is {0, 2, 3}."""
    return Graph.from_edges(4, [(0, 1), (1, 2)])


@pytest.fixture
def demo_instance(demo_graph):
    """The demo graph encoded for k=3, theta0=1: scale 3, edge similarity
    exp(-3), non-edge similarity exp(-6)."""
    return encode_graph(demo_graph, 3, 1.0)


def euclidean_metric(rng: np.random.Generator, n: int, dim: int = 3):
    """Random points in a cube; Euclidean distances are an exact metric up to
    rounding, which the default validation tolerance absorbs."""
    pts = rng.random((n, dim)) * 4.0
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1))
    d = (d + d.T) / 2.0
    np.fill_diagonal(d, 0.0)
    return validate_metric(d)


def random_edge_instance(rng: SplitMix64, k: int, theta0: float):
    """A random encoded instance together with a size-k subset that contains
    at least one edge, and that edge as the deformation pair."""
    while True:
        graph, _ = random_graph(rng, n_max=9)
        if graph.n < max(k, 2) or not graph.edges:
            continue
        metric, instance = encode_graph(graph, k, theta0)
        edge = sorted(graph.edges)[rng.below(len(graph.edges))]
        others = [v for v in range(graph.n) if v not in edge]
        extra = []
        while len(extra) < k - 2:
            cand = others[rng.below(len(others))]
            if cand not in extra:
                extra.append(cand)
        subset = tuple(sorted((*edge, *extra)))
        return metric, instance, subset, edge


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        print(f"\n[acceptance] {name}: {status}", flush=True)
