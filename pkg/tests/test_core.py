import itertools
import math

import numpy as np
import pytest

from spdiv.core import (
    dominance_certificate,
    similarity_matrix,
    sp_one_edge_closed_form,
    sp_two_point,
    sp_uniform,
    sp_value,
)
from spdiv.errors import (
    DegenerateDenominator,
    DuplicateIndex,
    EmptySubset,
    IndexOutOfRange,
    SingularSimilarity,
)
from spdiv.metric import validate_metric

from conftest import euclidean_metric

Q = math.exp(-3.0)
R = math.exp(-6.0)

# frozen reference values (independently recomputed via 1' Z^-1 1 with
# numpy.linalg.inv and the closed forms)
SP_INDEPENDENT = 2.9852008537718535    # 3 / (1 + 2 e^-6)
SP_ONE_EDGE = 2.8957373693296384       # (3 + q - 4r) / (1 + q - 2 r^2)
SP_PAIR_Q = 1.9051482536448667         # 2 / (1 + e^-3)
B_NORM_ONE_EDGE = 0.0522658205445303   # q + r


class TestSimilarityMatrix:
    def test_independent_subset_entries(self, demo_instance):
        metric, _ = demo_instance
        z = similarity_matrix(metric, (0, 2, 3), 1.0)
        assert z.m == 3
        expected = (1.0 - R) * np.eye(3) + R * np.ones((3, 3))
        np.testing.assert_allclose(z.values, expected, rtol=0, atol=1e-16)

    def test_one_edge_subset_entries(self, demo_instance):
        metric, _ = demo_instance
        z = similarity_matrix(metric, (0, 1, 3), 1.0)
        expected = np.array([[1.0, Q, R], [Q, 1.0, R], [R, R, 1.0]])
        np.testing.assert_allclose(z.values, expected, rtol=0, atol=1e-16)

    def test_singleton(self, demo_instance):
        metric, _ = demo_instance
        z = similarity_matrix(metric, (2,), 1.0)
        np.testing.assert_array_equal(z.values, np.ones((1, 1)))

    def test_duplicate_index(self, demo_instance):
        metric, _ = demo_instance
        with pytest.raises(DuplicateIndex):
            similarity_matrix(metric, (0, 0), 1.0)

    def test_index_out_of_range(self, demo_instance):
        metric, _ = demo_instance
        with pytest.raises(IndexOutOfRange):
            similarity_matrix(metric, (0, 9), 1.0)


class TestSpValue:
    def test_independent_subset(self, demo_instance):
        metric, _ = demo_instance
        wv = sp_value(metric, (0, 2, 3), 1.0)
        assert wv.sp_value == pytest.approx(2.985201, abs=1e-5)
        assert wv.sp_value == pytest.approx(SP_INDEPENDENT, abs=1e-12)
        assert wv.residual_inf <= 1e-9
        assert wv.sp_value == pytest.approx(float(wv.weights.sum()), abs=0.0)

    def test_one_edge_subset(self, demo_instance):
        metric, _ = demo_instance
        wv = sp_value(metric, (0, 1, 3), 1.0)
        assert wv.sp_value == pytest.approx(2.895737, abs=1e-5)
        assert wv.sp_value == pytest.approx(SP_ONE_EDGE, abs=1e-12)

    def test_singleton_is_exactly_one(self, demo_instance):
        metric, _ = demo_instance
        assert sp_value(metric, (3,), 1.0).sp_value == 1.0

    def test_duplicate_points_are_singular(self):
        metric = validate_metric(np.zeros((2, 2)))
        with pytest.raises(SingularSimilarity):
            sp_value(metric, (0, 1), 1.0)

    def test_empty_subset_rejected(self, demo_instance):
        metric, _ = demo_instance
        with pytest.raises(EmptySubset):
            sp_value(metric, (), 1.0)

    def test_matches_inverse_route(self):
        # cross-check against numpy's inverse on random metrics
        rng = np.random.default_rng(3)
        for _ in range(30):
            metric = euclidean_metric(rng, int(rng.integers(2, 9)))
            theta = float(rng.uniform(0.2, 2.0))
            k = int(rng.integers(1, metric.n + 1))
            subset = tuple(sorted(rng.choice(metric.n, size=k, replace=False).tolist()))
            z = similarity_matrix(metric, subset, theta).values
            expected = float(np.ones(k) @ np.linalg.inv(z) @ np.ones(k))
            assert sp_value(metric, subset, theta).sp_value == pytest.approx(expected, abs=1e-9)

    def test_residual_bound_on_random_metrics(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            metric = euclidean_metric(rng, int(rng.integers(1, 10)))
            subset = tuple(range(metric.n))
            wv = sp_value(metric, subset, 1.0)
            assert wv.residual_inf <= 1e-9

    def test_permutation_invariance(self, demo_instance):
        metric, _ = demo_instance
        rng = np.random.default_rng(9)
        base = sp_value(metric, (0, 1, 3), 1.0).sp_value
        for perm in itertools.permutations((0, 1, 3)):
            assert sp_value(metric, perm, 1.0).sp_value == pytest.approx(base, abs=1e-12)

    def test_rescaling_invariance(self):
        rng = np.random.default_rng(13)
        for _ in range(25):
            metric = euclidean_metric(rng, int(rng.integers(2, 8)))
            subset = tuple(range(metric.n))
            theta = float(rng.uniform(0.3, 3.0))
            c = float(rng.uniform(0.1, 10.0))
            direct = sp_value(metric, subset, theta).sp_value
            rescaled = sp_value(metric.rescaled(c), subset, theta / c).sp_value
            assert rescaled == pytest.approx(direct, abs=1e-9)


class TestClosedForms:
    def test_sp_uniform_reference(self):
        assert sp_uniform(3, R) == pytest.approx(SP_INDEPENDENT, abs=1e-15)
        assert sp_uniform(1, 0.77) == 1.0

    def test_sp_uniform_matches_solver_up_to_twelve(self):
        for k in range(1, 13):
            for s in (0.0, R, Q, 0.2):
                if s == 0.0:
                    # similarity 0 needs an effectively infinite distance
                    d = np.full((k, k), 200.0)
                else:
                    d = np.full((k, k), -math.log(s))
                np.fill_diagonal(d, 0.0)
                metric = validate_metric(d)
                value = sp_value(metric, tuple(range(k)), 1.0).sp_value
                assert value == pytest.approx(sp_uniform(k, s), abs=1e-9)

    def test_sp_uniform_domain(self):
        with pytest.raises(ValueError):
            sp_uniform(0, 0.5)
        with pytest.raises(ValueError):
            sp_uniform(3, 1.0)
        with pytest.raises(ValueError):
            sp_uniform(3, -0.1)

    def test_two_point_closed_form(self):
        assert sp_two_point(Q) == pytest.approx(SP_PAIR_Q, abs=1e-15)
        assert sp_uniform(2, Q) == sp_two_point(Q)
        d = np.array([[0.0, 3.0], [3.0, 0.0]])
        metric = validate_metric(d)
        assert sp_value(metric, (0, 1), 1.0).sp_value == pytest.approx(SP_PAIR_Q, abs=1e-12)

    def test_one_edge_closed_form_reference(self):
        assert sp_one_edge_closed_form(Q, R) == pytest.approx(SP_ONE_EDGE, abs=1e-15)

    def test_one_edge_reduces_to_uniform_when_q_equals_r(self):
        # (3 + r - 4r) / (1 + r - 2r^2) = 3(1-r) / ((1-r)(1+2r)) = 3/(1+2r)
        assert sp_one_edge_closed_form(R, R) == pytest.approx(sp_uniform(3, R), abs=1e-15)
        assert sp_one_edge_closed_form(R, R) == pytest.approx(2.985201, abs=1e-5)

    def test_one_edge_identity_matrix_case(self):
        assert sp_one_edge_closed_form(0.0, 0.0) == 3.0

    def test_one_edge_agrees_with_solver(self, demo_instance):
        metric, _ = demo_instance
        solver = sp_value(metric, (0, 1, 3), 1.0).sp_value
        assert solver == pytest.approx(sp_one_edge_closed_form(Q, R), abs=1e-9)

    def test_degenerate_denominator(self):
        with pytest.raises(DegenerateDenominator):
            sp_one_edge_closed_form(-1.0, 0.0)


class TestDominanceCertificate:
    def test_one_edge_pattern(self, demo_instance):
        metric, _ = demo_instance
        z = similarity_matrix(metric, (0, 1, 3), 1.0)
        cert = dominance_certificate(z)
        assert cert.b_norm_inf == pytest.approx(B_NORM_ONE_EDGE, abs=1e-15)
        assert cert.dominant

    def test_identity(self):
        cert = dominance_certificate(np.eye(1))
        assert cert.b_norm_inf == 0.0
        assert cert.dominant

    def test_twin_points_not_dominant(self):
        cert = dominance_certificate(np.ones((2, 2)))
        assert cert.b_norm_inf == 1.0
        assert not cert.dominant

    def test_reduction_instances_stay_below_quarter(self):
        rng = np.random.default_rng(21)
        from spdiv.metric import Graph, encode_graph

        for _ in range(40):
            n = int(rng.integers(2, 10))
            k = int(rng.integers(1, n + 1))
            theta0 = float(rng.choice([0.5, 1.0, 3.0]))
            edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
            metric, inst = encode_graph(Graph.from_edges(n, edges), k, theta0)
            subset = tuple(sorted(rng.choice(n, size=k, replace=False).tolist()))
            cert = dominance_certificate(similarity_matrix(metric, subset, theta0))
            assert cert.b_norm_inf <= (k - 1) * inst.edge_sim
            assert cert.b_norm_inf < 0.25
