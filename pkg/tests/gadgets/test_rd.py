from collections import Counter

import pytest

from src.errors import GraphStructureError
from src.gadgets.rd import (
    build_rd,
    build_td,
    disjoint_approach_count,
    level_path_count,
    mixed_faces,
    pi_rd,
    pure_faces,
    rd_path_counts,
    rd_symmetry,
    restrict_td,
    sbl_count_rd,
    sbl_count_rd_recursive,
    sc_count_rd,
    sc_count_rd_recursive,
    vertex_replace_rd,
)
from src.graphs.plane import euler_check
from src.models.graph_models import Partition
from src.oracle.enumeration import enum_simple_cycles, enum_simple_paths


@pytest.mark.parametrize('d', [0, 1, 2, 3])
def test_rd_size(d):
    rd = build_rd(d)
    assert rd.graph.node_count == 3 + 6 * d
    assert rd.graph.number_of_edges == 3 + 9 * d
    assert euler_check(rd.plane)
    assert len(rd.level_cycles) == d + 1


def test_closed_forms_match_the_recursions():
    assert [sc_count_rd(d) for d in range(4)] == [1, 14, 87, 460]
    assert [sbl_count_rd(d) for d in range(4)] == [2, 12, 62, 312]
    for d in range(8):
        assert sc_count_rd_recursive(d) == sc_count_rd(d)
        assert sbl_count_rd_recursive(d) == sbl_count_rd(d)
    with pytest.raises(ValueError):
        sc_count_rd(-1)


@pytest.mark.parametrize('d', [1, 2])
def test_closed_forms_match_enumeration(d):
    rd = build_rd(d)
    assert len(enum_simple_cycles(rd.graph, max_edges=-1)) == sc_count_rd(d)
    a0, b0, _ = rd.terminals
    assert len(enum_simple_paths(rd.graph, a0, b0, max_edges=-1)) == sbl_count_rd(d)


def test_path_extension_counts():
    rd = build_rd(1)
    assert rd_path_counts(1) == (6, 5)
    assert level_path_count(rd) == 6
    assert disjoint_approach_count(rd) == 5


def test_rotation_is_an_automorphism():
    rd = build_rd(2)
    image = rd_symmetry(rd)
    assert sorted(image) == list(range(rd.graph.node_count))

    def edge_multiset(pairs):
        return Counter(frozenset(pair) for pair in pairs)

    edges = [(e.u, e.v) for e in rd.graph.edges]
    assert edge_multiset((image[u], image[v]) for u, v in edges) == edge_multiset(edges)


class TestVertexReplacement:
    def test_k4_sizes(self, k4):
        m = vertex_replace_rd(k4, 0)
        assert (m.derived_graph.node_count, m.derived_graph.number_of_edges) == (12, 18)
        bigger = vertex_replace_rd(k4, 1)
        assert (bigger.derived_graph.node_count, bigger.derived_graph.number_of_edges) == (36, 54)
        assert euler_check(bigger.derived_plane)

    def test_original_edges_keep_their_endpoints(self, k4):
        m = vertex_replace_rd(k4, 1)
        for base_edge, derived_edge in m.original_edges.items():
            u, v = m.derived_graph.endpoints(derived_edge)
            bu, bv = k4.graph.endpoints(base_edge)
            assert u in m.per_base_node[bu]
            assert v in m.per_base_node[bv]

    def test_cycles_project_to_cycles_or_nothing(self, k4):
        m = vertex_replace_rd(k4, 0)
        base_cycles = set(enum_simple_cycles(k4.graph))
        projections = Counter(pi_rd(m, c) for c in enum_simple_cycles(m.derived_graph))
        assert projections[frozenset()] == 4
        assert set(projections) - {frozenset()} == base_cycles

    def test_needs_a_cubic_graph(self, grid4):
        with pytest.raises(GraphStructureError):
            vertex_replace_rd(grid4[0], 1)


class TestTd:
    def test_k4_sizes(self, k4):
        m = build_td(k4, 1)
        assert (m.derived_graph.node_count, m.derived_graph.number_of_edges) == (20, 54)
        assert len(set(m.original_nodes.values())) == 4
        assert max(m.derived_graph.degree(v) for v in m.original_nodes.values()) == 9

    def test_restriction(self, k4):
        m = build_td(k4, 1)
        whole = Partition(2, (0,) * m.derived_graph.node_count, allow_empty=True)
        assert restrict_td(m, whole).assign == (0, 0, 0, 0)

    def test_needs_a_triangulation(self, grid4):
        with pytest.raises(GraphStructureError):
            build_td(grid4[0], 1)


def test_face_counts(k4):
    star = Partition(2, (1, 0, 0, 0))
    assert mixed_faces(k4, star) == 3
    assert pure_faces(k4, star) == 1
    assert mixed_faces(k4, Partition(2, (0, 0, 0, 0), allow_empty=True)) == 0
