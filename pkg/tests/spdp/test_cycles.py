from fractions import Fraction

import pytest

from src.errors import GraphStructureError, TreewidthError
from src.models.graph_models import MultiGraph
from src.models.sp_models import UniPoly
from src.oracle.enumeration import enum_simple_cycles
from src.spdp.cycles import (
    count_simple_cycles,
    cycle_polynomial,
    eval_fsc_fsp,
    marginal_cycle_count,
    sc_marginal_mass,
)
from src.spdp.sptree import recognize_sp


def test_bigon_generating_functions():
    bigon = MultiGraph.from_pairs(2, [(0, 1), (0, 1)])
    fsc, fsp = eval_fsc_fsp(recognize_sp(bigon, 0, 1), {0: 1, 1: 1})
    assert fsc == UniPoly.constant(1)
    assert fsp == UniPoly.constant(2)


@pytest.mark.parametrize('pairs, expected', [
    ([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], 1),
    ([(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)], 3),
    ([(0, 1), (0, 1), (0, 1)], 3),
    ([(0, 1), (1, 2)], 0),
    ([(0, 0), (0, 1), (0, 1)], 1),
])
def test_cycle_counts(pairs, expected):
    g = MultiGraph.from_pairs(1 + max(max(p) for p in pairs), pairs)
    assert count_simple_cycles(g) == expected
    assert count_simple_cycles(g) == len(enum_simple_cycles(g))


def test_cycle_count_agrees_with_enumeration_on_random_sp_graphs():
    import numpy as np
    from src.generators.lattices import random_sp_graph

    rng = np.random.default_rng(11)
    for _ in range(10):
        g = random_sp_graph(rng, int(rng.integers(2, 14)))
        assert count_simple_cycles(g) == len(enum_simple_cycles(g))


def test_counting_needs_treewidth_two(k4):
    with pytest.raises(TreewidthError):
        count_simple_cycles(k4.graph)


def test_cycle_polynomial_marks_edges(theta):
    x = UniPoly.x()
    fsc = cycle_polynomial(theta, {0: x, 1: 1, 2: 1, 3: 1, 4: 1})
    assert fsc.coefficient(0) == 1
    assert fsc.coefficient(1) == 2


class TestMarginalMass:
    def test_forced_and_forbidden(self, theta):
        assert sc_marginal_mass(theta, None, [0], []) == 2
        assert sc_marginal_mass(theta, None, [0], [1]) == 1
        assert sc_marginal_mass(theta, None, [], [0]) == 1
        assert sc_marginal_mass(theta, None, [1, 3], []) == 1

    def test_edge_weights(self, theta):
        weights = {e: Fraction(2) for e in range(5)}
        assert sc_marginal_mass(theta, weights, [0], []) == 16
        weights[3] = '1/2'
        assert sc_marginal_mass(theta, weights, [0], []) == 8 + 2

    def test_cycle_through_a_cut_node(self):
        pendant = MultiGraph.from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 3)])
        assert sc_marginal_mass(pendant, None, [0], []) == 1
        assert sc_marginal_mass(pendant, None, [4], []) == 1

    def test_bad_arguments(self, theta):
        with pytest.raises(ValueError):
            sc_marginal_mass(theta, None, [0], [0])
        with pytest.raises(ValueError):
            sc_marginal_mass(theta, {e: -1 for e in range(5)}, [0], [])


class TestMarginalGraphCount:
    def test_folded_bigon_chains(self, theta):
        assert marginal_cycle_count(theta, [0], [], 1) == 6
        assert marginal_cycle_count(theta, [0], [], 4) == 41
        assert marginal_cycle_count(theta, [], [0], 0) == 1

    def test_forced_loop(self):
        looped = MultiGraph.from_pairs(2, [(0, 0), (0, 1), (0, 1)])
        with pytest.raises(GraphStructureError):
            marginal_cycle_count(looped, [0], [], 2)
        with pytest.raises(ValueError):
            marginal_cycle_count(looped, [1], [], -1)
