import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spdiv.errors import (
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
from spdiv.metric import (
    Graph,
    distance_scale,
    encode_graph,
    parse_graph,
    serialize_graph,
    validate_metric,
)


class TestValidateMetric:
    def test_demo_encoding_matrix_is_valid(self):
        d = np.full((4, 4), 6.0)
        np.fill_diagonal(d, 0.0)
        d[1, 2] = d[2, 1] = 3.0
        d[2, 3] = d[3, 2] = 3.0
        m = validate_metric(d)
        assert m.n == 4
        assert m.distance(1, 2) == 3.0

    def test_singleton(self):
        m = validate_metric(np.zeros((1, 1)))
        assert m.n == 1

    def test_triangle_violation_indices(self):
        d = np.array([[0.0, 1.0, 5.0], [1.0, 0.0, 1.0], [5.0, 1.0, 0.0]])
        with pytest.raises(TriangleViolation) as err:
            validate_metric(d)
        assert (err.value.i, err.value.j, err.value.k) == (0, 2, 1)

    def test_nonzero_diagonal(self):
        d = np.zeros((2, 2))
        d[1, 1] = 0.5
        with pytest.raises(NonzeroDiagonal) as err:
            validate_metric(d)
        assert err.value.i == 1

    def test_negative_distance(self):
        d = np.array([[0.0, -1.0], [-1.0, 0.0]])
        with pytest.raises(NegativeDistance):
            validate_metric(d)

    def test_asymmetric_entry(self):
        d = np.array([[0.0, 1.0], [2.0, 0.0]])
        with pytest.raises(AsymmetricEntry) as err:
            validate_metric(d)
        assert (err.value.i, err.value.j) == (0, 1)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            validate_metric(np.zeros((2, 3)))

    def test_non_finite_rejected(self):
        d = np.zeros((2, 2))
        d[0, 1] = d[1, 0] = np.inf
        with pytest.raises(ValueError):
            validate_metric(d)

    def test_tolerance_absorbs_rounding(self):
        d = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]])
        d[0, 2] = d[2, 0] = 2.0 + 5e-10  # within default tolerance
        validate_metric(d)
        with pytest.raises(TriangleViolation):
            validate_metric(d, tolerance=0.0)

    def test_zero_offdiagonal_allowed(self):
        # duplicate points are a valid metric; they fail later at the solve
        d = np.zeros((2, 2))
        validate_metric(d)


class TestDistanceScale:
    def test_reference_values(self):
        assert distance_scale(3, 1.0) == 3   # ln 12 = 2.4849
        assert distance_scale(1, 1.0) == 2   # ln 4 = 1.3863
        assert distance_scale(2, 1.0) == 3   # ln 8 = 2.0794
        assert distance_scale(1, 0.5) == 3   # 2 ln 4 = 2.7726

    def test_near_integer_guard(self):
        # ln(4k)/theta0 exactly an integer: theta0 = ln(4k)/m must give m
        for k, m in [(1, 2), (3, 4), (7, 5)]:
            theta0 = math.log(4 * k) / m
            assert distance_scale(k, theta0) == m

    def test_minimum_is_one(self):
        assert distance_scale(1, 1e6) == 1


class TestEncodeGraph:
    def test_demo_instance_parameters(self, demo_graph):
        metric, inst = encode_graph(demo_graph, 3, 1.0)
        assert inst.scale == 3
        assert inst.edge_sim == pytest.approx(math.exp(-3.0), rel=1e-15)
        assert inst.nonedge_sim == pytest.approx(math.exp(-6.0), rel=1e-15)
        assert inst.threshold == pytest.approx(3.0 / (1.0 + 2.0 * math.exp(-6.0)), rel=1e-15)
        expected = np.full((4, 4), 6.0)
        np.fill_diagonal(expected, 0.0)
        expected[0, 1] = expected[1, 0] = 3.0
        expected[1, 2] = expected[2, 1] = 3.0
        np.testing.assert_array_equal(metric.d, expected)

    def test_k1_threshold_is_one(self, demo_graph):
        _, inst = encode_graph(demo_graph, 1, 1.0)
        assert inst.scale == 2
        assert inst.edge_sim == pytest.approx(math.exp(-2.0), rel=1e-15)
        assert inst.threshold == 1.0

    def test_edgeless_graph_all_nonedge_distances(self):
        g = Graph.from_edges(3, [])
        metric, inst = encode_graph(g, 2, 1.0)
        assert inst.scale == 3
        off = metric.d[~np.eye(3, dtype=bool)]
        assert (off == 6.0).all()

    def test_invalid_k(self, demo_graph):
        for k in (0, 5, -1):
            with pytest.raises(InvalidK):
                encode_graph(demo_graph, k, 1.0)

    def test_invalid_theta(self, demo_graph):
        for theta0 in (0.0, -2.0):
            with pytest.raises(InvalidTheta):
                encode_graph(demo_graph, 3, theta0)

    def test_similarity_bounds_hold(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            n = int(rng.integers(1, 11))
            k = int(rng.integers(1, n + 1))
            theta0 = float(rng.choice([0.3, 0.5, 1.0, 2.0, 3.0]))
            edges = [
                (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4
            ]
            _, inst = encode_graph(Graph.from_edges(n, edges), k, theta0)
            assert inst.edge_sim <= 1.0 / (4.0 * k)
            assert inst.nonedge_sim <= 1.0 / (16.0 * k * k)
            assert inst.nonedge_sim == inst.edge_sim**2

    def test_distances_in_three_values_and_exact_triangle(self):
        rng = np.random.default_rng(11)
        for _ in range(40):
            n = int(rng.integers(2, 9))
            k = int(rng.integers(1, n + 1))
            edges = [
                (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5
            ]
            metric, inst = encode_graph(Graph.from_edges(n, edges), k, 1.0)
            values = set(np.unique(metric.d))
            assert values <= {0.0, float(inst.scale), float(2 * inst.scale)}
            # exact triangle inequality: re-validate with zero tolerance
            validate_metric(metric.d, tolerance=0.0)


class TestParseGraph:
    def test_demo_file(self):
        g = parse_graph("4 2\n0 1\n1 2\n")
        assert g.n == 4
        assert g.edges == frozenset({(0, 1), (1, 2)})

    def test_single_vertex_no_edges(self):
        g = parse_graph("1 0\n")
        assert g.n == 1
        assert g.edges == frozenset()

    def test_self_loop_line_number(self):
        with pytest.raises(SelfLoop) as err:
            parse_graph("2 1\n0 0\n")
        assert err.value.line == 2

    def test_vertex_out_of_range(self):
        with pytest.raises(VertexOutOfRange) as err:
            parse_graph("2 1\n0 5\n")
        assert err.value.line == 2

    def test_comments_and_blank_lines(self):
        text = "# a graph\n\n4 2  # header\n0 1\n# middle\n1 2\n"
        g = parse_graph(text)
        assert g.edges == frozenset({(0, 1), (1, 2)})

    def test_malformed_header(self):
        with pytest.raises(ParseError) as err:
            parse_graph("banana\n")
        assert err.value.line == 1

    def test_edge_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_graph("3 2\n0 1\n")
        with pytest.raises(ParseError):
            parse_graph("3 1\n0 1\n1 2\n")

    def test_duplicate_edges_collapse(self):
        g = parse_graph("3 3\n0 1\n1 0\n0 1\n")
        assert g.edges == frozenset({(0, 1)})

    @given(
        st.integers(min_value=1, max_value=12).flatmap(
            lambda n: st.tuples(
                st.just(n),
                st.sets(
                    st.tuples(
                        st.integers(0, n - 1), st.integers(0, n - 1)
                    ).filter(lambda e: e[0] != e[1]),
                    max_size=20,
                ),
            )
        )
    )
    @settings(max_examples=80, deadline=None)
    def test_roundtrip(self, case):
        n, raw_edges = case
        g = Graph.from_edges(n, raw_edges)
        assert parse_graph(serialize_graph(g)) == g
