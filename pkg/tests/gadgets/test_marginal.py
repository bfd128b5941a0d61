import pytest

from src.gadgets.marginal import marginal_graph, w_marginal_graph
from src.models.graph_models import MultiGraph
from src.spdp.cycles import count_simple_cycles, marginal_cycle_count


def test_forbidden_edges_are_deleted():
    k3 = MultiGraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
    m = marginal_graph(k3, [0], [1], 1)
    assert m.derived_graph.number_of_edges == 3
    assert 1 not in m.per_base_edge
    assert m.per_base_edge[0] == frozenset({0, 1})


def test_built_graph_agrees_with_the_folded_count(theta):
    m = marginal_graph(theta, [0], [], 2)
    assert (m.derived_graph.node_count, m.derived_graph.number_of_edges) == (5, 8)
    assert count_simple_cycles(m.derived_graph) == marginal_cycle_count(theta, [0], [], 2) == 11


def test_marginal_arguments(theta):
    with pytest.raises(ValueError):
        marginal_graph(theta, [0], [0], 1)
    with pytest.raises(ValueError):
        marginal_graph(theta, [0], [], -1)


class TestWeightedMarginal:
    def test_contracts_forbidden_and_stars_forced(self, c4):
        m = w_marginal_graph(c4, None, [0], [2], 2)
        assert m.derived_graph.node_count == 5
        assert m.derived_graph.total_weight() == 4
        assert m.node_map[2] == m.node_map[3]
        assert len(m.per_base_edge[0]) == 4
        assert 2 not in m.per_base_edge

    def test_weights_are_merged(self, path4):
        m = w_marginal_graph(path4, [1, 2, 3, 4], [], [1], 1)
        merged = m.node_map[1]
        assert m.derived_graph.weight(merged) == 5

    def test_arguments(self, c4):
        with pytest.raises(ValueError):
            w_marginal_graph(c4, None, [0], [], 0)
        with pytest.raises(ValueError):
            w_marginal_graph(c4, [1, 1], [0], [], 1)
