"""
    Party overlays and seat counts for districting experiments.
"""

import logging
from enum import Enum
from typing import Sequence

import numpy as np

from ..models.graph_models import Layout, MultiGraph, Partition, PartyAssignment

logger = logging.getLogger(__name__)


class VoteMode(Enum):
    """Which side of the layout votes for party 1."""
    LEFT = 'left'
    BOTTOM = 'bottom'


def assign_party(layout: Layout, mode: VoteMode, fraction: float) -> PartyAssignment:
    """
        Party 1 on nodes whose coordinate lies below the ``fraction`` quantile.

        Args:
            layout: Node coordinates
            mode: LEFT uses x, BOTTOM uses y
            fraction: Quantile in ``(0, 1)``

        Example:
            >>> assign_party(Layout({0: (0, 0), 1: (1, 0)}), VoteMode.LEFT, 0.6).party
            (1, 0)
    """
    if not 0 < fraction < 1:
        raise ValueError(f"fraction must lie in (0, 1), got {fraction}")
    mode = VoteMode(mode)
    axis = 0 if mode is VoteMode.LEFT else 1
    nodes = sorted(layout.coords)
    values = np.array([layout.coords[node][axis] for node in nodes], dtype=float)
    threshold = np.quantile(values, fraction)
    party = tuple(int(value < threshold) for value in values)
    logger.debug(f"Party 1 share {sum(party) / len(party):.3f} at threshold {threshold}")
    return PartyAssignment(party)


def seat_count(g: MultiGraph, p: Partition, party: PartyAssignment) -> int:
    """
        Number of blocks whose strict majority belongs to party 1.

        Node weights are ignored; a tied block goes to party 0.
    """
    if len(party.party) != g.node_count:
        raise ValueError("party assignment does not cover the graph")
    votes = [0] * p.k
    sizes = p.block_sizes()
    for node, block in enumerate(p.assign):
        votes[block] += party.party[node]
    return sum(1 for block in range(p.k) if 2 * votes[block] > sizes[block])


def seat_totals(g: MultiGraph, partitions: Sequence[Partition], party: PartyAssignment) -> np.ndarray:
    return np.array([seat_count(g, p, party) for p in partitions], dtype=np.int64)
