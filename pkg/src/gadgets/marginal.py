"""
    Marginal graphs: conditioning an edge-set measure on ``J`` in, ``J'`` out.

    Counting objects of a marginal graph and reading off the leading term
    recovers how many objects of the base contain ``J`` and avoid ``J'``.
    The unweighted form serves cycles (``J'`` deleted, ``J`` amplified by
    bigon chains); the weighted form serves balanced cuts (``J'`` contracted,
    ``J`` amplified by doubled stars whose new nodes weigh nothing).
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..graphs.core import as_edge_set, contract
from ..models.gadget_models import GadgetKind, GadgetMap
from ..models.graph_models import EdgeSet, MultiGraph

logger = logging.getLogger(__name__)


def _check_disjoint(g: MultiGraph, j: Iterable[int], j2: Iterable[int]) -> Tuple[EdgeSet, EdgeSet]:
    forced, forbidden = as_edge_set(g, j), as_edge_set(g, j2)
    if forced & forbidden:
        raise ValueError(f"J and J' share edges {sorted(forced & forbidden)}")
    return forced, forbidden


def marginal_graph(g: MultiGraph, j: Iterable[int], j2: Iterable[int], d: int) -> GadgetMap:
    """
        Delete ``J'`` and replace every edge of ``J`` by a chain of ``d`` bigons.

        Args:
            g: Base multigraph
            j: Edges to force into the cycle
            j2: Edges to forbid
            d: Bigons per forced edge (0 keeps them as they are)

        Raises:
            ValueError: If ``J`` and ``J'`` intersect or ``d < 0``

        Example:
            >>> k3 = MultiGraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
            >>> marginal_graph(k3, [0], [1], 1).derived_graph.number_of_edges
            3
    """
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    forced, forbidden = _check_disjoint(g, j, j2)
    pairs: List[Tuple[int, int]] = []
    node_count = g.node_count
    weights = dict(g.node_weight) if g.node_weight is not None else None
    per_base_edge: Dict[int, FrozenSet[int]] = {}
    segments: Dict[int, List[List[int]]] = {}
    for edge in g.edges:
        if edge.id in forbidden:
            continue
        if edge.id not in forced or d == 0:
            per_base_edge[edge.id] = frozenset({len(pairs)})
            segments[edge.id] = [[len(pairs)]]
            pairs.append((edge.u, edge.v))
            continue
        path = [edge.u]
        for _ in range(d - 1):
            path.append(node_count)
            if weights is not None:
                weights[node_count] = 0
            node_count += 1
        path.append(edge.v)
        chain = []
        for a, b in zip(path, path[1:]):
            chain.append([len(pairs), len(pairs) + 1])
            pairs.extend([(a, b), (a, b)])
        segments[edge.id] = chain
        per_base_edge[edge.id] = frozenset(e for segment in chain for e in segment)
    derived = MultiGraph.from_pairs(node_count, pairs, weights)
    logger.debug(
        f"Marginal graph (|J|={len(forced)}, |J'|={len(forbidden)}, d={d}): "
        f"{derived.node_count} nodes, {derived.number_of_edges} edges"
    )
    return GadgetMap(
        kind=GadgetKind.MARGINAL,
        base_graph=g,
        derived_graph=derived,
        per_base_edge=per_base_edge,
        original_nodes={v: v for v in g.nodes()},
        params={'d': d, 'forced': len(forced), 'forbidden': len(forbidden)},
        segments=segments,
    )


def w_marginal_graph(
    g: MultiGraph,
    w: Optional[Sequence[int]],
    j: Iterable[int],
    j2: Iterable[int],
    d: int,
) -> GadgetMap:
    """
        Replace ``J`` by doubled ``d``-stars, then contract ``J'`` and drop self-loops.

        Old nodes keep their weight (merged nodes add up), new star nodes
        weigh 0. ``node_map`` sends each base node to the derived node it was
        merged into.

        Args:
            g: Base multigraph
            w: Node weights (None reads the graph's own weights)
            j: Edges that must be cut
            j2: Edges that must not be cut
            d: Star width, at least 1

        Example:
            >>> m = w_marginal_graph(c4, None, [0], [2], 2)
            >>> m.derived_graph.node_count
            5
    """
    if d < 1:
        raise ValueError(f"doubled stars need d >= 1, got {d}")
    forced, forbidden = _check_disjoint(g, j, j2)
    weights = list(w) if w is not None else g.weights()
    if len(weights) != g.node_count:
        raise ValueError(f"expected {g.node_count} weights, got {len(weights)}")

    staged: Dict[int, int] = dict(enumerate(weights))
    pairs: List[Tuple[int, int]] = []
    staged_ids: Dict[int, List[int]] = {}
    node_count = g.node_count
    for edge in g.edges:
        if edge.id not in forced:
            staged_ids[edge.id] = [len(pairs)]
            pairs.append((edge.u, edge.v))
            continue
        ids = []
        for _ in range(d):
            staged[node_count] = 0
            ids.extend([len(pairs), len(pairs) + 1])
            pairs.extend([(edge.u, node_count), (node_count, edge.v)])
            node_count += 1
        staged_ids[edge.id] = ids
    staged_graph = MultiGraph.from_pairs(node_count, pairs, staged)

    derived, node_map, edge_map = contract(
        staged_graph, [staged_ids[e][0] for e in sorted(forbidden)]
    )
    per_base_edge: Dict[int, FrozenSet[int]] = {}
    for edge_id, ids in staged_ids.items():
        survivors = frozenset(edge_map[x] for x in ids if x in edge_map)
        if survivors:
            per_base_edge[edge_id] = survivors
    logger.debug(
        f"Weighted marginal graph (|J|={len(forced)}, |J'|={len(forbidden)}, d={d}): "
        f"{derived.node_count} nodes, total weight {derived.total_weight()}"
    )
    return GadgetMap(
        kind=GadgetKind.W_MARGINAL,
        base_graph=g,
        derived_graph=derived,
        per_base_edge=per_base_edge,
        original_nodes={},
        params={'d': d, 'forced': len(forced), 'forbidden': len(forbidden)},
        node_map={v: node_map[v] for v in g.nodes()},
    )
