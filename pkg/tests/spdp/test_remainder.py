import pytest

from src.errors import InsufficientModulusError
from src.gadgets.marginal import w_marginal_graph
from src.generators.lattices import cycle_graph, theta_graph
from src.graphs.core import cut
from src.oracle.enumeration import enum_connected_partitions, enum_simple_cycles
from src.spdp.remainder import (
    balanced_count_remainder,
    default_balanced_exponent,
    default_cycle_exponent,
    sc_count_remainder,
)
from src.spdp.tables import count_balanced


@pytest.fixture
def fan():
    """A chord and three paths of length two between nodes 0 and 1."""
    return theta_graph((1, 2, 2, 2))


def brute_balanced(g, weights, j, j2):
    count = 0
    for p in enum_connected_partitions(g, 2, eps=0, weights=weights):
        cut_set = cut(g, p)
        count += set(j) <= cut_set and not (set(j2) & cut_set)
    return count


def test_default_exponents():
    assert default_cycle_exponent(2) == 576
    assert default_balanced_exponent(3) == 10


class TestCycleRemainder:
    def test_forced_edges(self, theta):
        assert sc_count_remainder(theta, [0], [], d=4) == 2
        assert sc_count_remainder(theta, [1, 3], [], d=4) == 1
        assert sc_count_remainder(theta, [0], [1], d=4) == 1

    def test_default_depth(self, theta):
        assert sc_count_remainder(theta, [0], []) == 2

    @pytest.mark.parametrize('n', [5, 6])
    def test_default_depth_on_larger_cycles(self, n):
        cycle = cycle_graph(n)[0].graph
        assert sc_count_remainder(cycle, [0], []) == 1
        assert sc_count_remainder(cycle, [0, 2], []) == 1
        assert sc_count_remainder(cycle, [0], [1]) == 0

    def test_default_depth_matches_enumeration(self):
        g = theta_graph((1, 2, 3))
        cycles = enum_simple_cycles(g)
        for j in ([0], [1, 3], [2, 4]):
            expected = sum(set(j) <= c for c in cycles)
            assert sc_count_remainder(g, j, []) == expected

    def test_nothing_forced(self, theta):
        assert sc_count_remainder(theta, [], []) == 3
        assert sc_count_remainder(theta, [], [0]) == 1

    def test_undersized_modulus_raises(self, theta):
        with pytest.raises(InsufficientModulusError):
            sc_count_remainder(theta, [0], [], d=1)
        with pytest.raises(ValueError):
            sc_count_remainder(theta, [0], [], d=0)


class TestBalancedRemainder:
    def test_c6(self, c6):
        assert balanced_count_remainder(c6, None, [0], [], d=4) == 1
        assert balanced_count_remainder(c6, None, [], [0], d=4) == 2
        assert balanced_count_remainder(c6, None, [], []) == 3

    def test_default_depth(self, c6):
        assert balanced_count_remainder(c6, None, [0], []) == 1

    def test_star_amplification(self, c6):
        amplified = w_marginal_graph(c6, None, [0], [], 4).derived_graph
        assert amplified.total_weight() == 6
        assert count_balanced(amplified) == 2 ** 4 + 2

    def test_zero_weight_graph(self, c6):
        with pytest.raises(ValueError):
            balanced_count_remainder(c6, [0] * 6, [0], [])

    def test_forbidden_edges_leave_a_cut_vertex(self, fan):
        weights = [1, 1, 3, 1, 0]
        assert balanced_count_remainder(fan, weights, [], [0]) == 1
        assert balanced_count_remainder(fan, weights, [1], [0]) == 1
        assert balanced_count_remainder(fan, weights, [3], [0]) == 0

    @pytest.mark.parametrize('j, j2', [([0], []), ([], [0]), ([1], [0]), ([1], [4]), ([0, 5], [2])])
    def test_matches_enumeration(self, fan, j, j2):
        weights = [1, 1, 1, 2, 1]
        assert balanced_count_remainder(fan, weights, j, j2) == brute_balanced(fan, weights, j, j2)
