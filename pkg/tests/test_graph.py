"""Graph rewrite rules: complement, local complementation, deletion,
measurement rules, serialization."""

import itertools
import random

import pytest

from mecnet.graph import Graph, MeasurementRecord, graph_from_edgelist, graph_to_edgelist


def all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for sel in range(1 << len(pairs)):
        yield Graph(n, [pairs[i] for i in range(len(pairs)) if sel >> i & 1])


class TestComplement:
    def test_empty_to_complete(self):
        assert Graph(3).complement().edges() == [(0, 1), (0, 2), (1, 2)]

    def test_complete_to_empty(self):
        k3 = Graph(3, [(0, 1), (0, 2), (1, 2)])
        assert k3.complement().edges() == []

    def test_path_to_single_edge(self):
        assert Graph(3, [(0, 1), (1, 2)]).complement().edges() == [(0, 2)]

    def test_involution_random(self):
        rnd = random.Random(1)
        for _ in range(200):
            n = rnd.randint(1, 9)
            g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rnd.random() < 0.5])
            assert g.complement().complement() == g


class TestLocalComplement:
    def test_star_gains_triangle(self):
        star = Graph(4, [(0, 1), (0, 2), (0, 3)])
        got = star.local_complement(0)
        assert got.edges() == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

    def test_path_center_to_triangle(self):
        # 3-vertex case worked out by hand from the definition
        assert Graph(3, [(0, 1), (1, 2)]).local_complement(1).edges() == [
            (0, 1),
            (0, 2),
            (1, 2),
        ]

    def test_involution_random(self):
        rnd = random.Random(2)
        for _ in range(300):
            n = rnd.randint(2, 9)
            g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rnd.random() < 0.5])
            v = rnd.randrange(n)
            assert g.local_complement(v).local_complement(v) == g

    def test_invalid_vertex(self):
        with pytest.raises(ValueError):
            Graph(2, [(0, 1)]).local_complement(5)


class TestDeleteVertex:
    def test_triangle_minus_vertex(self):
        g = Graph(3, [(0, 1), (0, 2), (1, 2)]).delete_vertex(0)
        assert g.edges() == [(1, 2)]
        assert g.vertices() == [1, 2]
        assert not g.is_alive(0)

    def test_isolated_removal_keeps_edges(self):
        g = Graph(3, [(0, 1)]).delete_vertex(2)
        assert g.edges() == [(0, 1)]

    def test_k4_minus_vertex_is_k3(self):
        k4 = Graph(4, [e for e in itertools.combinations(range(4), 2)])
        assert k4.delete_vertex(3).edges() == [(0, 1), (0, 2), (1, 2)]

    def test_ids_stay_stable(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)]).delete_vertex(1)
        assert g.vertices() == [0, 2, 3]
        assert g.edges() == [(2, 3)]

    def test_double_delete_rejected(self):
        g = Graph(2, [(0, 1)]).delete_vertex(0)
        with pytest.raises(ValueError):
            g.delete_vertex(0)


class TestMeasureX:
    def test_single_edge(self):
        g, rec = Graph(2, [(0, 1)]).measure_x(1, 0)
        assert g.edges() == [] and g.vertices() == [0]
        assert rec == MeasurementRecord(1, "X", 0, rec.byproduct_tag)

    def test_star_center(self):
        # hand-run of the three-step rule on the 4-vertex star
        g, _ = Graph(4, [(0, 1), (0, 2), (0, 3)]).measure_x(0, 1)
        assert g.edges() == [(1, 2), (1, 3)]

    def test_nonadjacent_k0_rejected(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 1)]).measure_x(0, 2)

    def test_measured_vertex_never_survives(self):
        rnd = random.Random(3)
        for _ in range(200):
            n = rnd.randint(2, 8)
            g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rnd.random() < 0.6])
            options = [(v, k) for v in range(n) for k in g.neighbors(v)]
            if not options:
                continue
            v, k0 = rnd.choice(options)
            got, _ = g.measure_x(v, k0)
            assert v not in got.vertices()

    def test_untouched_region_preserved(self):
        # vertices outside N(v), N(k0) and {v} keep their mutual edges
        rnd = random.Random(4)
        for _ in range(200):
            n = rnd.randint(4, 9)
            g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rnd.random() < 0.4])
            options = [(v, k) for v in range(n) for k in g.neighbors(v)]
            if not options:
                continue
            v, k0 = rnd.choice(options)
            got, _ = g.measure_x(v, k0)
            touched = g.neighbors(v) | g.neighbors(k0) | {v, k0}
            outside = [u for u in range(n) if u not in touched]
            for a, b in itertools.combinations(outside, 2):
                assert got.has_edge(a, b) == g.has_edge(a, b)


class TestMeasureZ:
    def test_triangle(self):
        g, rec = Graph(3, [(0, 1), (0, 2), (1, 2)]).measure_z(0)
        assert g.edges() == [(1, 2)]
        assert rec.basis == "Z" and rec.special_neighbor is None

    def test_isolated(self):
        g, _ = Graph(3, [(0, 1)]).measure_z(2)
        assert g.edges() == [(0, 1)]

    def test_four_cycle_opposite(self):
        c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        g, _ = c4.measure_z(0)
        g, _ = g.measure_z(2)
        assert g.edges() == [] and g.vertices() == [1, 3]

    def test_matches_delete(self):
        rnd = random.Random(5)
        for _ in range(100):
            n = rnd.randint(1, 8)
            g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rnd.random() < 0.5])
            v = rnd.randrange(n)
            assert g.measure_z(v)[0] == g.delete_vertex(v)


class TestRecordInvariants:
    def test_x_needs_neighbor(self):
        with pytest.raises(ValueError):
            MeasurementRecord(0, "X", None)

    def test_z_takes_none(self):
        with pytest.raises(ValueError):
            MeasurementRecord(0, "Z", 1)


class TestStructure:
    def test_no_self_loop(self):
        with pytest.raises(ValueError):
            Graph(2, [(1, 1)])

    def test_out_of_range_edge(self):
        with pytest.raises(ValueError):
            Graph(2, [(0, 5)])

    def test_immutability(self):
        g = Graph(2, [(0, 1)])
        with pytest.raises(AttributeError):
            g.vertex_count = 7

    def test_check_passes_after_ops(self):
        rnd = random.Random(6)
        for _ in range(100):
            n = rnd.randint(2, 8)
            g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rnd.random() < 0.5])
            g.check()
            g.complement().check()
            v = rnd.randrange(n)
            g.local_complement(v).check()
            g.delete_vertex(v).check()

    def test_connected(self):
        assert Graph(3, [(0, 1), (1, 2)]).connected()
        assert not Graph(3, [(0, 1)]).connected()
        assert Graph(0).connected()

    def test_restrict(self):
        g = Graph(4, [(0, 1), (2, 3)]).delete_vertex(2).delete_vertex(3)
        assert g.restrict(2) == Graph(2, [(0, 1)])
        with pytest.raises(ValueError):
            Graph(4, [(1, 3)]).restrict(2)


class TestSerialization:
    def test_roundtrip(self):
        g = Graph(5, [(0, 4), (1, 2), (2, 3)])
        assert graph_from_edgelist(graph_to_edgelist(g)) == g

    def test_header_format(self):
        text = graph_to_edgelist(Graph(3, [(0, 2)]))
        assert text.splitlines()[0] == "n=3"
        assert text.splitlines()[1] == "0 2"

    def test_missing_header(self):
        with pytest.raises(ValueError):
            graph_from_edgelist("0 1\n")

    def test_deleted_vertices_not_serializable(self):
        with pytest.raises(ValueError):
            graph_to_edgelist(Graph(2, [(0, 1)]).delete_vertex(0))
