from collections import Counter

import numpy as np
import pytest

from src.errors import GraphStructureError, NoSampleError
from src.graphs.core import is_connected, is_connected_partition, is_eps_balanced
from src.models.graph_models import MultiGraph, Partition
from src.models.sampler_models import TreeKind, TreePartitionMode
from src.samplers.rng import SeededRng
from src.samplers.trees import (
    cut_edge_frequencies,
    draw_tree,
    draw_tree_partition,
    random_mst,
    tree_partition,
    wilson_ust,
)


@pytest.mark.parametrize('sampler', [wilson_ust, random_mst])
def test_trees_span(sampler, grid4):
    g = grid4[0].graph
    rng = SeededRng(6)
    for _ in range(5):
        tree = sampler(g, rng)
        assert len(tree) == g.node_count - 1
        assert is_connected(MultiGraph.from_pairs(g.node_count, [g.endpoints(e) for e in sorted(tree)]))


def test_path_has_one_tree():
    path = MultiGraph.from_pairs(3, [(0, 1), (1, 2)])
    assert sorted(wilson_ust(path, SeededRng(0))) == [0, 1]
    assert draw_tree(path, 'mst', SeededRng(0)) == frozenset({0, 1})


def test_disconnected_graph():
    g = MultiGraph.from_pairs(4, [(0, 1), (2, 3)])
    with pytest.raises(GraphStructureError):
        wilson_ust(g, SeededRng(0))
    with pytest.raises(GraphStructureError):
        random_mst(g, SeededRng(0))


def test_wilson_is_uniform_on_the_square(c4):
    rng = SeededRng(99)
    counts = Counter(wilson_ust(c4, rng) for _ in range(4000))
    assert len(counts) == 4
    assert all(abs(n / 4000 - 0.25) < 0.04 for n in counts.values())


def test_parallel_edges_are_distinct_trees():
    bigon = MultiGraph.from_pairs(2, [(0, 1), (0, 1)])
    rng = SeededRng(8)
    assert {wilson_ust(bigon, rng) for _ in range(50)} == {frozenset({0}), frozenset({1})}


class TestTreePartition:
    def test_path_has_one_balanced_edge(self, path4):
        for mode in TreePartitionMode:
            draw = draw_tree_partition(path4, None, 0, TreeKind.UST, SeededRng(1), mode=mode)
            assert draw.partition == Partition(2, (0, 0, 1, 1))
            assert draw.edge == 1
        assert draw_tree_partition(path4, None, 0, 'ust', SeededRng(1)).attempts == 1

    def test_weights(self, path4):
        draw = draw_tree_partition(path4, [3, 1, 1, 1], 0, 'mst', SeededRng(2))
        assert draw.partition.assign == (0, 1, 1, 1)

    @pytest.mark.parametrize('kind', ['ust', 'mst'])
    def test_grid_partitions_are_balanced_and_connected(self, grid4, kind):
        g = grid4[0].graph
        rng = SeededRng(17)
        for _ in range(5):
            p = tree_partition(g, None, 0, kind, rng)
            assert is_connected_partition(g, p)
            assert is_eps_balanced(g, p, 0)

    def test_impossible_balance(self):
        path3 = MultiGraph.from_pairs(3, [(0, 1), (1, 2)])
        with pytest.raises(NoSampleError):
            draw_tree_partition(path3, None, 0, 'ust', SeededRng(0), max_retries=5)

    def test_arguments(self, path4):
        with pytest.raises(ValueError):
            draw_tree_partition(path4, None, -1, 'ust', SeededRng(0))
        with pytest.raises(ValueError):
            draw_tree_partition(path4, None, 0, 'kruskal', SeededRng(0))
        with pytest.raises(GraphStructureError):
            draw_tree_partition(MultiGraph.from_pairs(1, []), None, 0, 'ust', SeededRng(0))


def test_cut_edge_frequencies(c4):
    frequencies = cut_edge_frequencies(c4, [Partition(2, (0, 0, 1, 1)), Partition(2, (0, 1, 1, 1))])
    assert np.allclose(frequencies, [0.5, 0.5, 0.0, 1.0])
    assert not cut_edge_frequencies(c4, []).any()
