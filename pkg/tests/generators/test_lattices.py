import numpy as np
import pytest

from src.generators.elections import VoteMode, assign_party, seat_count, seat_totals
from src.generators.lattices import (
    franken_graph,
    gate_graph,
    grid,
    random_plane_graph,
    random_sp_graph,
    shaved_grid,
    theta_graph,
    triangular_patch,
)
from src.graphs.core import bridges, is_connected
from src.graphs.plane import euler_check
from src.models.graph_models import Layout, MultiGraph, Partition, PartyAssignment
from src.spdp.sptree import is_series_parallel

GRID_36_EDGES = 2 * 36 * 35


def test_grid_sizes():
    plane, layout = grid(3, 4)
    assert plane.graph.node_count == 12
    assert plane.graph.number_of_edges == 17
    assert layout.coords[5] == (2.0, 1.0)
    with pytest.raises(ValueError):
        grid(0, 3)


def test_shaved_grid_replaces_corners_by_diagonals():
    plane, _ = shaved_grid(3)
    assert (plane.graph.node_count, plane.graph.number_of_edges) == (5, 8)
    assert euler_check(plane)
    with pytest.raises(ValueError):
        shaved_grid(2)


@pytest.mark.parametrize('width, strict_zero, diagonals', [
    (0, True, 0),
    (0, False, 18),
    (3, False, 9 * 35),
])
def test_gate_diagonal_counts(width, strict_zero, diagonals):
    plane, _ = gate_graph(width, strict_zero=strict_zero)
    assert plane.graph.node_count == 36 * 36
    assert plane.graph.number_of_edges == GRID_36_EDGES + diagonals


def test_gate_width_is_bounded():
    with pytest.raises(ValueError):
        gate_graph(3.5)


def test_franken_and_triangular_patches():
    plane, _ = franken_graph(2)
    assert (plane.graph.node_count, plane.graph.number_of_edges) == (8, 11)
    tri, _ = triangular_patch(3)
    assert tri.graph.number_of_edges == 12 + 4


def test_theta_graph():
    theta = theta_graph((1, 2, 3))
    assert theta.node_count == 5
    assert theta.number_of_edges == 6
    with pytest.raises(ValueError):
        theta_graph((2,))


def test_random_sp_graph_is_series_parallel():
    rng = np.random.default_rng(4)
    for edges in (1, 5, 12):
        g = random_sp_graph(rng, edges)
        assert g.number_of_edges == edges
        assert is_series_parallel(g)


def test_random_plane_graph_is_bridgeless():
    plane, _ = random_plane_graph(np.random.default_rng(2), n=3, deletions=3)
    assert is_connected(plane.graph)
    assert not bridges(plane.graph)
    assert euler_check(plane)


class TestElections:
    def test_party_quantile(self):
        layout = Layout({0: (0, 0), 1: (1, 0), 2: (2, 0), 3: (3, 0), 4: (4, 0)})
        party = assign_party(layout, VoteMode.LEFT, 0.6)
        assert party.party == (1, 1, 1, 0, 0)
        assert assign_party(layout, 'bottom', 0.6).party == (0, 0, 0, 0, 0)

    def test_fraction_must_be_open_unit(self):
        with pytest.raises(ValueError):
            assign_party(Layout({0: (0, 0)}), VoteMode.LEFT, 1.0)

    def test_seats_need_a_strict_majority(self, path4):
        assert seat_count(path4, Partition(2, (0, 0, 1, 1)), PartyAssignment((1, 1, 0, 0))) == 1
        assert seat_count(path4, Partition(2, (0, 0, 1, 1)), PartyAssignment((1, 0, 1, 0))) == 0

    def test_seat_totals(self, path4):
        party = PartyAssignment((1, 1, 1, 0))
        plans = [Partition(2, (0, 0, 1, 1)), Partition(2, (0, 1, 1, 1))]
        assert seat_totals(path4, plans, party).tolist() == [1, 2]

    def test_party_must_cover_graph(self):
        g = MultiGraph.from_pairs(2, [(0, 1)])
        with pytest.raises(ValueError):
            seat_count(g, Partition(2, (0, 1)), PartyAssignment((1,)))
