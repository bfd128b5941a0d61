from fractions import Fraction

import pytest

from src.errors import GraphStructureError
from src.graphs.core import (
    as_edge_set,
    bridges,
    comp,
    contract,
    cut,
    h0,
    h1,
    induced_edge_subgraph,
    is_connected_partition,
    is_eps_balanced,
    is_in_E2,
    is_isomorphic,
)
from src.models.graph_models import MultiGraph, Partition


def test_cut_and_comp_are_inverse_on_connected_partitions(c4):
    p = Partition(2, (0, 0, 1, 1))
    assert cut(c4, p) == frozenset({1, 3})
    assert comp(c4, [1, 3]) == p


def test_comp_of_nothing_is_one_block(c4):
    assert comp(c4, []).assign == (0, 0, 0, 0)


def test_homology_counts(c4, path4):
    assert h0(c4) == 1
    assert h1(c4) == 1
    assert h1(path4) == 0
    assert h1(c4, [0, 1]) == 0
    assert h0(c4, [0, 2]) == 2


def test_bridges_track_edge_ids(c4, path4):
    assert bridges(path4) == frozenset({0, 1, 2})
    assert bridges(c4) == frozenset()
    bigon = MultiGraph.from_pairs(2, [(0, 1), (0, 1)])
    assert bridges(bigon) == frozenset()


def test_union_of_cycles(theta):
    assert is_in_E2(theta, [0, 1, 2])
    assert is_in_E2(theta, [0, 1, 2, 3, 4])
    assert is_in_E2(theta, [])
    assert not is_in_E2(theta, [1, 2])


def test_self_loop_is_not_a_cycle():
    looped = MultiGraph.from_pairs(1, [(0, 0)])
    assert not is_in_E2(looped, [0])


def test_connected_partition(c4):
    assert is_connected_partition(c4, Partition(2, (0, 0, 1, 1)))
    assert not is_connected_partition(c4, Partition(2, (0, 1, 0, 1)))
    assert is_connected_partition(c4, Partition(2, (0, 0, 0, 0), allow_empty=True))


def test_partition_rejects_empty_blocks_unless_allowed():
    with pytest.raises(ValueError):
        Partition(2, (0, 0, 0))
    assert Partition(2, (0, 0, 0), allow_empty=True).has_empty_block()


def test_canonical_form_relabels_by_smallest_node():
    assert Partition(2, (1, 1, 0, 0)).canonical().assign == (0, 0, 1, 1)
    assert Partition(2, (1, 0, 1, 0)).same_unordered(Partition(2, (0, 1, 0, 1)))


def test_eps_balance():
    path7 = MultiGraph.from_pairs(7, [(i, i + 1) for i in range(6)])
    p = Partition(2, (0, 0, 0, 1, 1, 1, 1))
    assert is_eps_balanced(path7, p, Fraction(1, 3))
    assert not is_eps_balanced(path7, p, 0)
    assert is_eps_balanced(path7, p, '0.34')
    with pytest.raises(ValueError):
        is_eps_balanced(path7, p, -1)


def test_contract_drops_loops_and_sums_weights():
    k3 = MultiGraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)], {0: 2, 1: 3, 2: 1})
    small, node_map, edge_map = contract(k3, [0])
    assert (small.node_count, small.number_of_edges) == (2, 2)
    assert node_map == [0, 0, 1]
    assert edge_map == {1: 0, 2: 1}
    assert small.weights() == [5, 1]


def test_edge_ids_are_validated(c4):
    with pytest.raises(GraphStructureError):
        as_edge_set(c4, [7])
    with pytest.raises(GraphStructureError):
        cut(c4, Partition(2, (0, 1)))


def test_isomorphism_sees_multiplicity():
    bigon = MultiGraph.from_pairs(2, [(0, 1), (0, 1)])
    trigon = MultiGraph.from_pairs(2, [(0, 1), (0, 1), (1, 0)])
    assert is_isomorphic(bigon, MultiGraph.from_pairs(2, [(1, 0), (0, 1)]))
    assert not is_isomorphic(bigon, trigon)


def test_induced_edge_subgraph_keeps_touched_nodes(theta):
    weighted = theta.with_weights({3: 4})
    sub, nodes, edge_map = induced_edge_subgraph(weighted, [4, 3])
    assert nodes == [0, 1, 3]
    assert edge_map == {3: 0, 4: 1}
    assert [(e.u, e.v) for e in sub.edges] == [(0, 2), (2, 1)]
    assert sub.weights() == [1, 1, 4]
    with pytest.raises(GraphStructureError):
        induced_edge_subgraph(theta, [9])
