"""
    Correspondence between connected k-partitions and dual edge sets.

    For a connected plane graph G with dual G*, a connected k-partition P maps
    to ``D(cut(P))``, an edge set of G* that is a union of simple cycles with
    circuit rank ``k - 1``. The inverse is ``comp`` of the preimage.
"""

import logging
from typing import Iterable

from ..errors import InadmissibleStateError
from ..models.graph_models import EdgeSet, MultiGraph, Partition, PlaneGraph
from .core import comp, cut, h1, is_connected_partition, is_in_E2

logger = logging.getLogger(__name__)


def is_dual_k_partition(g: MultiGraph, j: Iterable[int], k: int) -> bool:
    """
        Whether ``j`` is a dual k-partition: bridgeless with circuit rank ``k - 1``.

        Example:
            >>> c4 = MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
            >>> is_dual_k_partition(c4, {0, 1, 2, 3}, 2)
            True
    """
    edge_ids = set(j)
    if k < 1:
        return False
    return is_in_E2(g, edge_ids) and h1(g, edge_ids) == k - 1


def maximal_dual_k(g: MultiGraph, j: Iterable[int], k: int) -> bool:
    """
        Whether ``j`` is a dual k-partition of the largest possible size ``|V| + k - 2``.

        Such sets are exactly the dual k-partitions whose subgraph spans ``g``
        in one component.
    """
    edge_ids = set(j)
    return is_dual_k_partition(g, edge_ids, k) and len(edge_ids) == g.node_count + k - 2


def dual_of_partition(plane: PlaneGraph, p: Partition) -> EdgeSet:
    """
        Dual edge set ``D(cut(P))`` of a connected partition.

        Dual edge ids coincide with primal ids (see ``plane_dual``).

        Raises:
            InadmissibleStateError: If ``p`` is not a connected partition
    """
    if not is_connected_partition(plane.graph, p):
        raise InadmissibleStateError("dual_of_partition needs a connected partition")
    return cut(plane.graph, p)


def partition_of_dual(plane: PlaneGraph, j: Iterable[int]) -> Partition:
    """
        ``comp(D^-1(J))``: components of the primal graph after deleting the
        primal edges of a dual edge set.
    """
    return comp(plane.graph, j)
