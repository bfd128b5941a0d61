import pytest

from src.errors import GraphStructureError, InadmissibleStateError
from src.gadgets.bigons import (
    chain_of_bigons,
    chain_of_dipoles,
    doubled_star,
    fiber_sizes,
    lift,
    pi_bigons,
    pi_dipoles,
    restrict_doubled_star,
    star_fiber_size,
)
from src.graphs.core import is_in_E2
from src.models.graph_models import MultiGraph, Partition
from src.oracle.enumeration import enum_connected_partitions, enum_simple_cycles
from src.spdp.cycles import count_simple_cycles


class TestChains:
    def test_bigon_chain_shape(self, theta):
        m = chain_of_bigons(theta, 2)
        assert m.derived_graph.node_count == 4 + 5
        assert m.derived_graph.number_of_edges == 20
        assert all(len(m.segments[e]) == 2 for e in range(5))

    def test_zero_is_the_identity(self, theta):
        m = chain_of_bigons(theta, 0)
        assert m.derived_graph.edges == theta.edges
        assert m.per_base_edge[3] == frozenset({3})

    def test_cycle_fibers(self, theta):
        m = chain_of_bigons(theta, 2)
        cycles = enum_simple_cycles(m.derived_graph)
        assert len(cycles) == count_simple_cycles(m.derived_graph) == 394
        fibers = fiber_sizes(cycles, lambda c: pi_bigons(m, c))
        for base_cycle in enum_simple_cycles(theta):
            assert fibers[base_cycle] == 2 ** (2 * len(base_cycle))
        for edge in range(5):
            assert fibers[frozenset({edge})] == 2

    def test_dipoles(self):
        m = chain_of_dipoles(MultiGraph.from_pairs(2, [(0, 1)]), 3, 2)
        assert (m.derived_graph.node_count, m.derived_graph.number_of_edges) == (3, 6)
        with pytest.raises(ValueError):
            chain_of_dipoles(m.base_graph, 1, 2)
        with pytest.raises(ValueError):
            chain_of_dipoles(m.base_graph, 3, 0)

    def test_negative_depth(self, theta):
        with pytest.raises(ValueError):
            chain_of_bigons(theta, -1)


class TestLift:
    def test_canonical_lift(self, theta):
        m = chain_of_bigons(theta, 2)
        result = lift(m, [0, 1, 2])
        assert result.count == 64
        assert len(result.edges) == 6
        assert is_in_E2(m.derived_graph, result.edges)
        assert pi_bigons(m, result.edges) == frozenset({0, 1, 2})

    def test_dipole_fiber(self, theta):
        m = chain_of_dipoles(theta, 3, 2)
        result = lift(m, [1, 2, 3, 4])
        assert result.count == 3 ** 8
        assert pi_dipoles(m, result.edges) == frozenset({1, 2, 3, 4})

    def test_paths_do_not_lift(self, theta):
        with pytest.raises(GraphStructureError):
            lift(chain_of_bigons(theta, 2), [1, 2])


class TestDoubledStar:
    def test_shape(self):
        m = doubled_star(MultiGraph.from_pairs(2, [(0, 1)]), 3)
        assert (m.derived_graph.node_count, m.derived_graph.number_of_edges) == (5, 6)
        assert m.derived_graph.node_weight is None
        weighted = doubled_star(m.base_graph, 3, new_node_weight=0)
        assert weighted.derived_graph.weights() == [1, 1, 0, 0, 0]

    def test_partition_fibers_match_the_closed_form(self, path4):
        m = doubled_star(path4, 2)
        derived = enum_connected_partitions(m.derived_graph, 2, allow_empty=True)
        fibers = fiber_sizes(derived, lambda p: restrict_doubled_star(m, p).canonical().assign)
        base_states = enum_connected_partitions(path4, 2, allow_empty=True)
        assert len(fibers) == len(base_states)
        for base in base_states:
            assert fibers[base.assign] == star_fiber_size(m, base)
        assert sum(fibers.values()) == 3 * 4 + 7

    def test_restriction_needs_connected_blocks(self, path4):
        m = doubled_star(path4, 1)
        scattered = Partition(2, tuple(v % 2 for v in range(m.derived_graph.node_count)))
        with pytest.raises(InadmissibleStateError):
            restrict_doubled_star(m, scattered)

    def test_width_must_be_positive(self, path4):
        with pytest.raises(ValueError):
            doubled_star(path4, 0)
