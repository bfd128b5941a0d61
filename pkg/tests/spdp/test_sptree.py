import pytest

from src.errors import NotSeriesParallelError, TreewidthError
from src.models.graph_models import MultiGraph
from src.models.sp_models import SPKind
from src.spdp.sptree import (
    embed_treewidth2,
    find_sp_terminals,
    is_series_parallel,
    recognize_sp,
    validate_sp_tree,
)


def test_theta_decomposes_between_its_branch_nodes(theta):
    tree = recognize_sp(theta, 0, 1)
    assert tree.kind is SPKind.PARALLEL
    assert (tree.source, tree.sink) == (0, 1)
    assert sorted(tree.edge_ids()) == [0, 1, 2, 3, 4]
    validate_sp_tree(tree, theta)


def test_reversed_terminals(theta):
    tree = recognize_sp(theta, 1, 0)
    assert (tree.source, tree.sink) == (1, 0)
    validate_sp_tree(tree, theta)


def test_wrong_terminals_get_stuck(theta):
    with pytest.raises(NotSeriesParallelError):
        recognize_sp(theta, 2, 3)
    assert not is_series_parallel(theta, 2, 3)
    with pytest.raises(ValueError):
        recognize_sp(theta, 0, 0)


def test_terminal_search(c6, k4):
    tree = find_sp_terminals(c6)
    validate_sp_tree(tree, c6)
    assert is_series_parallel(c6)
    assert not is_series_parallel(k4.graph)


def test_isolated_nodes_are_not_sp():
    g = MultiGraph.from_pairs(3, [(0, 1)])
    with pytest.raises(NotSeriesParallelError):
        find_sp_terminals(g)


def test_validation_catches_a_foreign_tree(theta, c4):
    with pytest.raises(NotSeriesParallelError):
        validate_sp_tree(find_sp_terminals(c4), theta)


class TestTreewidthTwoCompletion:
    def test_cycle_gains_a_chord(self, c4):
        supergraph, tree, edge_map = embed_treewidth2(c4)
        assert supergraph.number_of_edges == 5
        assert edge_map == {0: 0, 1: 1, 2: 2, 3: 3}
        validate_sp_tree(tree, supergraph)

    def test_self_loops_are_dropped(self):
        looped = MultiGraph.from_pairs(3, [(0, 0), (0, 1), (1, 2), (2, 0)])
        supergraph, _, edge_map = embed_treewidth2(looped)
        assert 0 not in edge_map
        assert supergraph.number_of_edges == 3

    def test_k4_has_treewidth_three(self, k4):
        with pytest.raises(TreewidthError):
            embed_treewidth2(k4.graph)
