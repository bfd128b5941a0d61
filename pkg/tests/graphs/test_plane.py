import pytest

from src.errors import EmbeddingError, GraphStructureError, InadmissibleStateError
from src.generators.lattices import grid
from src.graphs.core import canonical_unordered, h1, is_isomorphic
from src.graphs.duality import dual_of_partition, is_dual_k_partition, maximal_dual_k, partition_of_dual
from src.graphs.plane import euler_check, is_triangulation, plane_dual
from src.models.graph_models import MultiGraph, Partition, PlaneGraph
from src.oracle.enumeration import enum_connected_partitions, enum_simple_cycles


def test_square_has_two_faces_and_a_bigon_dual():
    plane, _ = grid(2, 2)
    assert plane.face_count == 2
    assert euler_check(plane)
    dual, mapping = plane_dual(plane)
    assert (dual.graph.node_count, dual.graph.number_of_edges) == (2, 4)
    assert mapping == {e: e for e in range(4)}


def test_k4_is_a_self_dual_triangulation(k4):
    assert is_triangulation(k4)
    assert k4.face_count == 4
    dual, _ = plane_dual(k4)
    assert dual.graph.node_count == 4
    assert all(dual.graph.degree(v) == 3 for v in dual.graph.nodes())


def test_grid_is_not_a_triangulation(grid4):
    assert not is_triangulation(grid4[0])


def test_connected_bipartitions_match_dual_cycles(k4):
    dual, mapping = plane_dual(k4)
    partitions = enum_connected_partitions(k4.graph, 2)
    cycles = set(enum_simple_cycles(dual.graph))
    assert len(partitions) == len(cycles) == 7
    for p in partitions:
        image = frozenset(mapping[e] for e in dual_of_partition(k4, p))
        assert image in cycles
        assert canonical_unordered(partition_of_dual(k4, image)).assign == p.assign


@pytest.mark.parametrize('n', [2, 3])
def test_connected_tripartitions_match_dual_edge_sets(n):
    plane, _ = grid(n, 3)
    dual, mapping = plane_dual(plane)
    partitions = enum_connected_partitions(plane.graph, 3)
    assert partitions
    for p in partitions:
        image = frozenset(mapping[e] for e in dual_of_partition(plane, p))
        assert is_dual_k_partition(dual.graph, image, 3)
        assert h1(dual.graph, image) == 2
        assert canonical_unordered(partition_of_dual(plane, image)).assign == p.assign


def test_dual_of_the_dual_is_the_graph(k4, grid4):
    for plane in (k4, grid4[0]):
        dual, _ = plane_dual(plane)
        double, mapping = plane_dual(dual)
        assert mapping == {e.id: e.id for e in plane.graph.edges}
        assert double.face_count == plane.graph.node_count
        assert is_isomorphic(double.graph, plane.graph)


def test_dual_k_partition_predicates(c4):
    assert is_dual_k_partition(c4, {0, 1, 2, 3}, 2)
    assert not is_dual_k_partition(c4, {0, 1}, 2)
    assert maximal_dual_k(c4, {0, 1, 2, 3}, 2)


def test_dual_needs_connected_graph():
    two_bigons = MultiGraph.from_pairs(4, [(0, 1), (0, 1), (2, 3), (2, 3)])
    plane = PlaneGraph(two_bigons, {0: (0, 2), 1: (1, 3), 2: (4, 6), 3: (5, 7)})
    with pytest.raises(GraphStructureError):
        plane_dual(plane)


def test_incomplete_rotation_is_rejected(c4):
    with pytest.raises(EmbeddingError):
        PlaneGraph(c4, {0: (0,)})


def test_dual_of_disconnected_partition_is_refused():
    g = MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
    plane = PlaneGraph(g, {0: (0,), 1: (1, 2), 2: (3, 4), 3: (5,)})
    with pytest.raises(InadmissibleStateError):
        dual_of_partition(plane, Partition(2, (0, 1, 0, 1)))
