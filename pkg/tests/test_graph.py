from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orient2.errors import (
    LoopEdgeError,
    MgSyntaxError,
    ParallelEdgeError,
    VertexOutOfRangeError,
)
from orient2.graph import (
    DegreeSummary,
    MixedRatio,
    check_mixed_ratio,
    degrees,
    min_mixed_ratio,
    parse_mg,
    serialize_mg,
    validate,
)

from conftest import complete_graph, random_mixed

TRIANGLE_TEXT = "mgraph 1\nn 3\ne 0 1\na 1 2\na 2 0\n"


class TestValidate:
    def test_mixed_triangle(self, mixed_triangle):
        assert mixed_triangle.n == 3
        assert mixed_triangle.undirected == ((0, 1),)
        assert mixed_triangle.arcs == ((1, 2), (2, 0))

    def test_parallel_edge_and_arc(self):
        with pytest.raises(ParallelEdgeError) as exc:
            validate(2, [(0, 1)], [(0, 1)])
        assert exc.value.pair == (0, 1)

    def test_digon_rejected(self):
        with pytest.raises(ParallelEdgeError):
            validate(2, [], [(0, 1), (1, 0)])

    def test_loop(self):
        with pytest.raises(LoopEdgeError) as exc:
            validate(1, [], [(0, 0)])
        assert exc.value.vertex == 0

    def test_vertex_out_of_range(self):
        with pytest.raises(VertexOutOfRangeError):
            validate(2, [(0, 2)], [])

    def test_duplicates_deduplicated(self):
        g = validate(3, [(0, 1), (1, 0)], [(1, 2), (1, 2)])
        assert g.undirected == ((0, 1),)
        assert g.arcs == ((1, 2),)


class TestDegrees:
    def test_mixed_triangle_vertex_1(self, mixed_triangle):
        assert degrees(mixed_triangle, 1) == DegreeSummary(1, 0, 1, 2)

    def test_isolated_vertex(self):
        g = validate(2, [], [])
        assert degrees(g, 0) == DegreeSummary(0, 0, 0, 0)

    def test_out_of_range(self, mixed_triangle):
        with pytest.raises(VertexOutOfRangeError):
            degrees(mixed_triangle, 3)

    def test_tripartition(self):
        for seed in range(30):
            g = random_mixed(seed)
            for u in range(g.n):
                d = degrees(g, u)
                assert d.degree == d.out_degree + d.in_degree + d.un_degree

    def test_min_max_degree(self, mixed_triangle):
        assert mixed_triangle.min_degree == 2
        assert mixed_triangle.max_degree == 2


class TestMixedRatio:
    def test_mixed_triangle(self, mixed_triangle):
        r = min_mixed_ratio(mixed_triangle)
        assert (r.c1, r.c2) == (Fraction(1, 2), Fraction(1, 2))

    def test_all_undirected(self):
        r = min_mixed_ratio(complete_graph(5))
        assert (r.c1, r.c2) == (0, 0)

    def test_out_star(self):
        g = validate(4, [], [(0, 1), (0, 2), (0, 3)])
        r = min_mixed_ratio(g)
        assert (r.c1, r.c2) == (1, 0)

    def test_component_bounds(self):
        with pytest.raises(ValueError):
            MixedRatio(Fraction(3, 2), Fraction(0))

    def test_check_at_minimum_is_empty(self, mixed_triangle):
        assert check_mixed_ratio(mixed_triangle, min_mixed_ratio(mixed_triangle)) == []
        for seed in range(20):
            g = random_mixed(seed)
            assert check_mixed_ratio(g, min_mixed_ratio(g)) == []

    def test_check_reports_violators(self, mixed_triangle):
        violations = check_mixed_ratio(
            mixed_triangle, MixedRatio(Fraction(1, 3), Fraction(1, 2))
        )
        assert {v.vertex for v in violations} == {1, 2}
        assert all(v.out_ratio == Fraction(1, 2) for v in violations)

    def test_check_all_undirected_zero_caps(self):
        g = complete_graph(4)
        assert check_mixed_ratio(g, MixedRatio(Fraction(0), Fraction(0))) == []

    def test_adding_undirected_edge_keeps_arc_degrees(self):
        g = validate(4, [(0, 1)], [(1, 2), (3, 0)])
        g2 = validate(4, [(0, 1), (2, 3)], [(1, 2), (3, 0)])
        for u in range(4):
            assert degrees(g, u).out_degree == degrees(g2, u).out_degree
            assert degrees(g, u).in_degree == degrees(g2, u).in_degree
        r2 = min_mixed_ratio(g2)
        assert 0 <= r2.c1 <= 1 and 0 <= r2.c2 <= 1


class TestMgFormat:
    def test_parse_triangle(self, mixed_triangle):
        assert parse_mg(TRIANGLE_TEXT) == mixed_triangle

    def test_serialize_triangle(self, mixed_triangle):
        assert serialize_mg(mixed_triangle) == TRIANGLE_TEXT

    def test_unknown_directive(self):
        with pytest.raises(MgSyntaxError) as exc:
            parse_mg("mgraph 1\nn 2\nx 0 1\n")
        assert exc.value.line == 3

    def test_empty_graph(self):
        assert serialize_mg(validate(0)) == "mgraph 1\nn 0\n"
        assert parse_mg("mgraph 1\nn 0\n").n == 0

    def test_comments_and_blanks(self):
        text = "# header comment\nmgraph 1\n\nn 2\ne 0 1  # tail comment\n"
        assert parse_mg(text) == validate(2, [(0, 1)], [])

    def test_bad_header(self):
        with pytest.raises(MgSyntaxError) as exc:
            parse_mg("mgraf 1\n")
        assert exc.value.line == 1

    def test_validation_errors_propagate(self):
        with pytest.raises(ParallelEdgeError):
            parse_mg("mgraph 1\nn 2\ne 0 1\na 0 1\n")

    def test_round_trip_canonicalizes(self):
        scrambled = "mgraph 1\nn 3\na 2 0\ne 1 0\na 1 2\n"
        g = parse_mg(scrambled)
        assert parse_mg(serialize_mg(g)) == g

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_round_trip_identity(self, seed):
        g = random_mixed(seed)
        assert parse_mg(serialize_mg(g)) == g
