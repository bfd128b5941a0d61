"""
    Cuts, components, homology counts and partition predicates.

    These are the primitive maps between partitions and edge sets: ``cut``
    sends a partition to the edges crossing it, ``comp`` sends an edge set to
    the components left after deleting it. Edge sets are frozensets of edge
    ids of the owning graph.
"""

import logging
from collections import deque
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx
from networkx.utils import UnionFind

from ..errors import GraphStructureError
from ..models.graph_models import Edge, EdgeSet, MultiGraph, Partition

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction, str]


def as_edge_set(g: MultiGraph, edge_ids: Iterable[int]) -> EdgeSet:
    """
        Validate edge ids against ``g`` and freeze them.

        Raises:
            GraphStructureError: If an id is out of range
    """
    edges = frozenset(int(e) for e in edge_ids)
    for edge_id in edges:
        if not 0 <= edge_id < g.number_of_edges:
            raise GraphStructureError(f"edge id {edge_id} out of range [0, {g.number_of_edges})")
    return edges


def cut(g: MultiGraph, p: Partition) -> EdgeSet:
    """
        Edges whose endpoints lie in different blocks.

        Example:
            >>> c4 = MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
            >>> sorted(cut(c4, Partition(2, (0, 0, 1, 1))))
            [1, 3]
    """
    if p.node_count != g.node_count:
        raise GraphStructureError(
            f"partition covers {p.node_count} nodes, graph has {g.node_count}"
        )
    return frozenset(e.id for e in g.edges if p.assign[e.u] != p.assign[e.v])


def comp(g: MultiGraph, j: Iterable[int]) -> Partition:
    """
        Partition into the connected components of ``g`` with ``j`` removed.

        Blocks are numbered by increasing smallest node, so the result is in
        canonical unordered form.
    """
    removed = set(j)
    forest = UnionFind(range(g.node_count))
    for edge in g.edges:
        if edge.id not in removed and edge.u != edge.v:
            forest.union(edge.u, edge.v)
    labels: Dict[int, int] = {}
    assign = []
    for node in range(g.node_count):
        root = forest[node]
        if root not in labels:
            labels[root] = len(labels)
        assign.append(labels[root])
    return Partition(max(len(labels), 1), tuple(assign))


def edge_subgraph_nodes(g: MultiGraph, j: Iterable[int]) -> Set[int]:
    nodes: Set[int] = set()
    for edge_id in j:
        nodes.update(g.endpoints(edge_id))
    return nodes


def h0(g: MultiGraph, j: Optional[Iterable[int]] = None) -> int:
    """
        Number of connected components.

        Args:
            g: Graph
            j: When given, count components of the edge-induced subgraph ``G[J]``
                (nodes are the endpoints of ``j``)
    """
    if j is None:
        return nx.number_connected_components(g.to_networkx()) if g.node_count else 0
    edge_ids = list(j)
    sub = g.to_networkx(edge_ids).subgraph(edge_subgraph_nodes(g, edge_ids))
    return nx.number_connected_components(sub) if sub.number_of_nodes() else 0


def h1(g: MultiGraph, j: Optional[Iterable[int]] = None) -> int:
    """
        Circuit rank ``|E| - |V| + h0``, of ``g`` or of ``G[J]``.

        Example:
            >>> h1(MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
            1
    """
    if j is None:
        return g.number_of_edges - g.node_count + h0(g)
    edge_ids = list(set(j))
    return len(edge_ids) - len(edge_subgraph_nodes(g, edge_ids)) + h0(g, edge_ids)


def bridges(g: MultiGraph, j: Optional[Iterable[int]] = None) -> EdgeSet:
    """
        Bridge edges of ``g`` (or of ``G[J]``), tracked by edge id.

        Parallel edges are never bridges; self-loops are never bridges.
        Iterative lowlink search.
    """
    edge_ids = range(g.number_of_edges) if j is None else sorted(set(j))
    incident: Dict[int, List[Tuple[int, int]]] = {}
    for edge_id in edge_ids:
        u, v = g.endpoints(edge_id)
        if u == v:
            continue
        incident.setdefault(u, []).append((edge_id, v))
        incident.setdefault(v, []).append((edge_id, u))

    order: Dict[int, int] = {}
    low: Dict[int, int] = {}
    found: Set[int] = set()
    for root in sorted(incident):
        if root in order:
            continue
        order[root] = low[root] = len(order)
        stack: List[Tuple[int, int, int]] = [(root, -1, 0)]
        while stack:
            node, parent_edge, position = stack[-1]
            neighbors = incident[node]
            if position < len(neighbors):
                stack[-1] = (node, parent_edge, position + 1)
                edge_id, other = neighbors[position]
                if edge_id == parent_edge:
                    continue
                if other in order:
                    low[node] = min(low[node], order[other])
                else:
                    order[other] = low[other] = len(order)
                    stack.append((other, edge_id, 0))
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[node])
                if low[node] > order[parent]:
                    found.add(parent_edge)
    return frozenset(found)


def is_in_E2(g: MultiGraph, j: Iterable[int]) -> bool:
    """
        Whether ``j`` is a union of (not necessarily disjoint) simple cycles.

        Equivalent to ``G[J]`` having no bridge. Self-loops are not simple
        cycles, so an edge set containing one is rejected. The empty set is
        the empty union.
    """
    edge_ids = set(j)
    if any(g.is_self_loop(e) for e in edge_ids):
        return False
    return not bridges(g, edge_ids)


def block_is_connected(g: MultiGraph, members: Set[int]) -> bool:
    """Whether the induced subgraph on ``members`` is connected (empty counts as connected)."""
    if not members:
        return True
    start = next(iter(members))
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for _, other in g.adjacency[node]:
            if other in members and other not in seen:
                seen.add(other)
                queue.append(other)
    return len(seen) == len(members)


def is_connected_partition(g: MultiGraph, p: Partition) -> bool:
    """
        Whether every block induces a connected subgraph.

        Empty blocks pass only when the partition allows them.
    """
    if p.node_count != g.node_count:
        raise GraphStructureError(
            f"partition covers {p.node_count} nodes, graph has {g.node_count}"
        )
    for block in p.blocks():
        if not block:
            if not p.allow_empty:
                return False
            continue
        if not block_is_connected(g, set(block)):
            return False
    return True


def to_fraction(value: Number) -> Fraction:
    """Exact rational from ints, decimal strings or floats (floats via their repr)."""
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def is_eps_balanced(
    g: MultiGraph,
    p: Partition,
    eps: Number,
    weights: Optional[Sequence[int]] = None,
) -> bool:
    """
        Whether a 2-partition has block weight ratio within ``[1 - eps, 1 + eps]``.

        Both ratios ``|A|/|B|`` and ``|B|/|A|`` are checked. Weights default to
        the graph's node weights (1 when unset).

        Args:
            g: Graph
            p: Partition with ``k == 2``
            eps: Nonnegative tolerance; floats are read by their decimal repr
            weights: Optional per-node weights overriding the graph's

        Raises:
            ValueError: If ``eps < 0`` or ``p.k != 2``

        Example:
            >>> path7 = MultiGraph.from_pairs(7, [(i, i + 1) for i in range(6)])
            >>> is_eps_balanced(path7, Partition(2, (0, 0, 0, 1, 1, 1, 1)), Fraction(1, 3))
            True
    """
    tolerance = to_fraction(eps)
    if tolerance < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    if p.k != 2:
        raise ValueError(f"balance is defined for 2-partitions, got k={p.k}")
    node_weights = list(weights) if weights is not None else g.weights()
    totals = [0, 0]
    for node, block in enumerate(p.assign):
        totals[block] += node_weights[node]
    a, b = totals
    if a == 0 or b == 0:
        return a == b
    low, high = 1 - tolerance, 1 + tolerance
    return all(low <= ratio <= high for ratio in (Fraction(a, b), Fraction(b, a)))


def contract(
    g: MultiGraph, edge_ids: Iterable[int]
) -> Tuple[MultiGraph, List[int], Dict[int, int]]:
    """
        Contract an edge set, then delete every resulting self-loop.

        Node weights of merged nodes are summed. Surviving edges keep their
        relative order.

        Returns:
            Tuple of (contracted graph, node map old -> new, edge map old -> new)

        Example:
            >>> k3 = MultiGraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
            >>> small, _, _ = contract(k3, [0])
            >>> small.node_count, small.number_of_edges
            (2, 2)
    """
    merged = UnionFind(range(g.node_count))
    for edge_id in edge_ids:
        merged.union(*g.endpoints(edge_id))
    labels: Dict[int, int] = {}
    node_map: List[int] = []
    for node in range(g.node_count):
        root = merged[node]
        if root not in labels:
            labels[root] = len(labels)
        node_map.append(labels[root])

    weights: Optional[Dict[int, int]] = None
    if g.node_weight is not None:
        weights = {}
        for node in range(g.node_count):
            weights[node_map[node]] = weights.get(node_map[node], 0) + g.weight(node)

    pairs: List[Tuple[int, int]] = []
    edge_map: Dict[int, int] = {}
    for edge in g.edges:
        u, v = node_map[edge.u], node_map[edge.v]
        if u == v:
            continue
        edge_map[edge.id] = len(pairs)
        pairs.append((u, v))
    logger.debug(f"Contracted {g.node_count} nodes to {len(labels)}, {len(pairs)} edges survive")
    return MultiGraph.from_pairs(len(labels), pairs, weights), node_map, edge_map


def delete_edges(g: MultiGraph, edge_ids: Iterable[int]) -> Tuple[MultiGraph, Dict[int, int]]:
    """Remove edges, keeping every node; returns the graph and the old -> new edge map."""
    removed = set(edge_ids)
    pairs: List[Tuple[int, int]] = []
    edge_map: Dict[int, int] = {}
    for edge in g.edges:
        if edge.id in removed:
            continue
        edge_map[edge.id] = len(pairs)
        pairs.append((edge.u, edge.v))
    return MultiGraph.from_pairs(g.node_count, pairs, g.node_weight), edge_map


def induced_edge_subgraph(
    g: MultiGraph, j: Iterable[int]
) -> Tuple[MultiGraph, List[int], Dict[int, int]]:
    """
        Subgraph spanned by an edge set: its edges and the nodes they touch.

        Returns:
            Tuple of (subgraph, new -> old node list, old -> new edge map)

        Raises:
            GraphStructureError: On an unknown edge id
    """
    edges = sorted(as_edge_set(g, j))
    nodes = sorted(edge_subgraph_nodes(g, edges))
    index = {node: i for i, node in enumerate(nodes)}
    weights = {index[v]: g.weight(v) for v in nodes} if g.node_weight is not None else None
    pairs = [(index[g.edges[e].u], index[g.edges[e].v]) for e in edges]
    return MultiGraph.from_pairs(len(nodes), pairs, weights), nodes, {e: i for i, e in enumerate(edges)}


def is_connected(g: MultiGraph) -> bool:
    return g.node_count > 0 and h0(g) == 1


def is_isomorphic(g1: MultiGraph, g2: MultiGraph) -> bool:
    """Multigraph isomorphism respecting edge multiplicities and self-loops."""
    if (g1.node_count, g1.number_of_edges) != (g2.node_count, g2.number_of_edges):
        return False
    return nx.is_isomorphic(g1.to_networkx(), g2.to_networkx())


def canonical_unordered(p: Partition) -> Partition:
    return p.canonical()
