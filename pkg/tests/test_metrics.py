import math

import numpy as np
import pytest

from orient2.errors import EmptyGraphError, OrientationMismatchError, VertexOutOfRangeError
from orient2.graph import validate
from orient2.lab import random_mixed_graph
from orient2.graph import MixedRatio
from orient2.metrics import (
    INFINITE,
    Orientation,
    directed_eccentricities,
    has_bridge,
    mixed_diameter,
    mixed_distance,
    orientation_from_mg,
    orientation_to_mg,
    two_step_matrix,
)
from orient2.probability import sample_orientation

from conftest import complete_graph, random_mixed


def directed_triangle():
    return validate(3, [], [(0, 1), (1, 2), (2, 0)])


def directed_path():
    return validate(3, [], [(0, 1), (1, 2)])


class TestMixedDistance:
    def test_triangle_from_0(self, mixed_triangle):
        assert mixed_distance(mixed_triangle, 0).dist == (0, 1, 2)

    def test_triangle_from_2(self, mixed_triangle):
        assert mixed_distance(mixed_triangle, 2).dist[0] == 1

    def test_unreachable(self):
        g = validate(2, [], [])
        assert mixed_distance(g, 0).dist == (0, None)

    def test_source_out_of_range(self, mixed_triangle):
        with pytest.raises(VertexOutOfRangeError):
            mixed_distance(mixed_triangle, 5)

    def test_triangle_inequality(self):
        for seed in range(25):
            g = random_mixed(seed)
            reports = [mixed_distance(g, s).dist for s in range(g.n)]
            for u in range(g.n):
                for v in range(g.n):
                    for w in range(g.n):
                        duv, dvw, duw = reports[u][v], reports[v][w], reports[u][w]
                        if duv is not None and dvw is not None:
                            assert duw is not None and duw <= duv + dvw

    def test_symmetry_on_undirected(self):
        g = complete_graph(6)
        for u in range(6):
            for v in range(6):
                assert mixed_distance(g, u).dist[v] == mixed_distance(g, v).dist[u]


class TestMixedDiameter:
    def test_triangle(self, mixed_triangle):
        assert mixed_diameter(mixed_triangle) == 2

    def test_complete(self):
        assert mixed_diameter(complete_graph(5)) == 1

    def test_disconnected(self):
        assert mixed_diameter(validate(3, [(0, 1)], [])) == INFINITE

    def test_single_vertex(self):
        assert mixed_diameter(validate(1)) == 0

    def test_empty_graph(self):
        with pytest.raises(EmptyGraphError):
            mixed_diameter(validate(0))


class TestBridges:
    def test_path_first_bridge(self):
        assert has_bridge(validate(3, [(0, 1), (1, 2)], [])) == (0, 1)

    def test_cycle_bridgeless(self):
        c4 = validate(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [])
        assert has_bridge(c4) is None

    def test_mixed_triangle_weak_default(self, mixed_triangle):
        assert has_bridge(mixed_triangle) is None

    def test_mixed_triangle_mixed_reachability(self, mixed_triangle):
        # without {0,1}, vertex 0 reaches nothing along arcs
        assert has_bridge(mixed_triangle, mixed_reachability=True) == (0, 1)


class TestDirectedEccentricities:
    def test_directed_triangle(self):
        report = directed_eccentricities(directed_triangle())
        assert report.ecc == (2, 2, 2)
        assert report.diameter == 2
        assert report.strong

    def test_directed_path(self):
        report = directed_eccentricities(directed_path())
        assert not report.strong
        assert report.diameter == INFINITE

    def test_rejects_mixed_input(self, mixed_triangle):
        with pytest.raises(ValueError):
            directed_eccentricities(mixed_triangle)


class TestTwoStep:
    def test_directed_triangle_total(self):
        m = two_step_matrix(directed_triangle())
        assert m.total_off_diagonal
        assert m.reaches(0, 2) and m.reaches(2, 1)

    def test_directed_path(self):
        m = two_step_matrix(directed_path())
        assert m.reaches(0, 2)
        assert not m.reaches(2, 0)
        assert not m.total_off_diagonal

    def test_matches_bfs_on_random_digraphs(self):
        for seed in range(500):
            n = 5 + seed % 36
            g = random_mixed_graph(n, 0.35, 1.0, MixedRatio(1, 1), seed)
            assert not g.undirected
            verdict = two_step_matrix(g).total_off_diagonal
            report = directed_eccentricities(g)
            assert verdict == (report.diameter <= 2)


class TestOrientation:
    def test_needs_one_bit_per_edge(self, mixed_triangle):
        with pytest.raises(ValueError):
            Orientation(mixed_triangle, np.array([], dtype=bool))

    def test_directed_pair(self, mixed_triangle):
        d = Orientation(mixed_triangle, np.array([True]))
        assert d.directed_pair(0) == (0, 1)
        d = Orientation(mixed_triangle, np.array([False]))
        assert d.directed_pair(0) == (1, 0)

    def test_as_digraph_has_all_arcs(self, mixed_triangle):
        d = Orientation(mixed_triangle, np.array([True]))
        assert d.as_digraph().arcs == ((0, 1), (1, 2), (2, 0))

    def test_orienting_never_shortens_distances(self):
        for seed in range(20):
            g = random_mixed(seed)
            d = sample_orientation(g, seed + 1000)
            dig = d.as_digraph()
            for s in range(g.n):
                base = mixed_distance(g, s).dist
                oriented = mixed_distance(dig, s).dist
                for v in range(g.n):
                    if oriented[v] is not None:
                        assert base[v] is not None and base[v] <= oriented[v]


class TestOrientationFiles:
    def test_round_trip(self, mixed_triangle):
        d = sample_orientation(mixed_triangle, 3)
        text = orientation_to_mg(d)
        back = orientation_from_mg(mixed_triangle, text)
        assert back.same_directions(d)

    def test_hash_mismatch_rejected(self, mixed_triangle):
        other = complete_graph(3)
        text = orientation_to_mg(sample_orientation(other, 0))
        with pytest.raises(OrientationMismatchError):
            orientation_from_mg(mixed_triangle, text)

    def test_missing_direction_rejected(self, mixed_triangle):
        text = "mgraph 1\nn 3\na 1 2\na 2 0\n"
        with pytest.raises(OrientationMismatchError):
            orientation_from_mg(mixed_triangle, text)
