import numpy as np
import pytest

from src.errors import EnumerationGuardError, NotSeriesParallelError
from src.generators.lattices import cycle_graph, random_sp_graph, theta_graph
from src.models.graph_models import MultiGraph
from src.models.sp_models import ZERO, Junction, MonoidWeight
from src.oracle.enumeration import enum_connected_partitions
from src.spdp.sptree import recognize_sp
from src.spdp.tables import (
    count_balanced,
    leaf_table,
    series_table,
    x_table,
    x_table_by_enumeration,
)


@pytest.fixture
def theta5() -> MultiGraph:
    """Paths of lengths 1, 2 and 3 between nodes 0 and 1."""
    return theta_graph((1, 2, 3))


@pytest.fixture
def triangle() -> MultiGraph:
    return MultiGraph.from_pairs(3, [(0, 1), (0, 2), (2, 1)])


def brute_balanced(g, weights):
    if sum(weights) % 2:
        return 0
    return len(enum_connected_partitions(g, 2, eps=0, weights=weights))


def test_leaf_table():
    one = MonoidWeight(1, True)
    table = leaf_table(one, one)
    assert table.get((Junction.JOINED, MonoidWeight(2, True), ZERO, ZERO)) == 1
    assert table.get((Junction.CROSS, one, ZERO, one)) == 1
    assert len(table) == 2


def test_series_of_crossed_edges_closes_the_middle_block():
    one, seen = MonoidWeight(1, True), MonoidWeight(0, True)
    table = series_table(leaf_table(one, one), leaf_table(seen, one))
    assert table.get((Junction.SPLIT, MonoidWeight(2, True), MonoidWeight(1, True), ZERO)) == 1
    assert table.get((Junction.CROSS, one, MonoidWeight(1, True), one)) == 1
    assert table.total_mass() == 5


def test_path_table_mass():
    path = MultiGraph.from_pairs(3, [(0, 1), (1, 2)])
    assert x_table(recognize_sp(path, 0, 2), [1, 1, 1]).total_mass() == 4


@pytest.mark.parametrize('weights', [[1, 1, 1], [1, 1, 3], [0, 2, 0]])
def test_triangle_table_matches_enumeration(triangle, weights):
    table = x_table(recognize_sp(triangle, 0, 1), weights)
    assert dict(table.items()) == dict(x_table_by_enumeration(triangle, 0, 1, weights).items())
    assert table.total_mass() == 5
    whole = MonoidWeight(sum(weights), True)
    assert table.get((whole, ZERO, ZERO)) == 1


@pytest.mark.parametrize('source, sink, weights', [
    (0, 1, [1, 1, 1, 1, 1]),
    (0, 1, [1, 2, 0, 1, 3]),
    (1, 0, [2, 1, 1, 0, 1]),
])
def test_dp_table_matches_enumeration(theta5, source, sink, weights):
    tree = recognize_sp(theta5, source, sink)
    by_dp = dict(x_table(tree, weights).items())
    by_enumeration = dict(x_table_by_enumeration(theta5, source, sink, weights).items())
    assert by_dp == by_enumeration


def test_random_sp_tables_match_enumeration():
    rng = np.random.default_rng(20)
    for _ in range(15):
        g = random_sp_graph(rng, int(rng.integers(3, 9)))
        weights = [int(x) for x in rng.integers(0, 4, size=g.node_count)]
        by_dp = dict(x_table(recognize_sp(g, 0, 1), weights).items())
        assert by_dp == dict(x_table_by_enumeration(g, 0, 1, weights).items())


def test_enumeration_guard():
    big = cycle_graph(13)[0].graph
    with pytest.raises(EnumerationGuardError):
        x_table_by_enumeration(big, 0, 1)


class TestCountBalanced:
    def test_small_graphs(self, path4, c6):
        assert count_balanced(path4) == 1
        assert count_balanced(c6) == 3

    def test_odd_total_has_none(self):
        path3 = MultiGraph.from_pairs(3, [(0, 1), (1, 2)])
        assert count_balanced(path3) == 0

    def test_weights_and_zero_weight_nodes(self, path4, c4):
        assert count_balanced(path4, [3, 1, 1, 1]) == 1
        assert count_balanced(c4, [2, 0, 1, 1]) == 2

    def test_parallel_composition(self, theta5):
        assert count_balanced(theta5, [1, 1, 3, 1, 0]) == 1
        assert count_balanced(theta5, [1, 1, 3, 1, 0]) == brute_balanced(theta5, [1, 1, 3, 1, 0])

    @pytest.mark.parametrize('weights', [[1, 1, 1, 1, 2], [2, 2, 1, 1, 0], [1, 1, 1, 1, 1], [1, 1, 1, 1]])
    def test_matches_enumeration(self, theta, theta5, weights):
        g = theta if len(weights) == theta.node_count else theta5
        assert count_balanced(g, weights) == brute_balanced(g, weights)

    def test_random_sp_graphs(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            g = random_sp_graph(rng, int(rng.integers(2, 11)))
            weights = [int(x) for x in rng.integers(0, 7, size=g.node_count)]
            assert count_balanced(g, weights) == brute_balanced(g, weights)

    def test_self_loops_are_ignored(self):
        looped = MultiGraph.from_pairs(4, [(0, 0), (0, 1), (1, 2), (2, 3)])
        assert count_balanced(looped) == 1

    def test_bad_input(self, path4, k4):
        with pytest.raises(ValueError):
            count_balanced(path4, [1, 1])
        with pytest.raises(ValueError):
            count_balanced(path4, [1, -1, 1, 1])
        with pytest.raises(NotSeriesParallelError):
            count_balanced(k4.graph)
