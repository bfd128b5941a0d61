"""
    Edge-replacement gadgets: chains of bigons, chains of dipoles and doubled stars.

    Chains multiply the number of cycles (or dual partitions) lying over a
    base edge set; doubled stars multiply the number of partitions lying over
    a base cut. Each constructor keeps the base nodes as derived nodes
    ``0 .. n - 1`` and appends new nodes after them.
"""

import logging
from collections import defaultdict
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Tuple, TypeVar

from ..errors import GraphStructureError, InadmissibleStateError
from ..graphs.core import h1, is_connected_partition, is_in_E2
from ..models.gadget_models import GadgetKind, GadgetMap, LiftResult
from ..models.graph_models import EdgeSet, MultiGraph, Partition

logger = logging.getLogger(__name__)

T = TypeVar('T')


def _identity_map(g: MultiGraph, kind: GadgetKind, params: Dict[str, int]) -> GadgetMap:
    return GadgetMap(
        kind=kind,
        base_graph=g,
        derived_graph=MultiGraph(g.node_count, list(g.edges), g.node_weight),
        per_base_edge={e.id: frozenset({e.id}) for e in g.edges},
        original_nodes={v: v for v in g.nodes()},
        params=params,
        segments={e.id: [[e.id]] for e in g.edges},
    )


def chain_of_dipoles(g: MultiGraph, r: int, d: int) -> GadgetMap:
    """
        Subdivide every edge into ``d`` segments and replace each segment by ``r`` parallel edges.

        Args:
            g: Base multigraph
            r: Parallel edges per segment, at least 2
            d: Segments per base edge, at least 1

        Example:
            >>> m = chain_of_dipoles(MultiGraph.from_pairs(2, [(0, 1)]), 3, 2)
            >>> m.derived_graph.node_count, m.derived_graph.number_of_edges
            (3, 6)
    """
    if r < 2:
        raise ValueError(f"dipoles need r >= 2, got {r}")
    if d < 1:
        raise ValueError(f"dipole chains need d >= 1, got {d}")
    return _chain(g, r, d, GadgetKind.DIPOLES)


def chain_of_bigons(g: MultiGraph, d: int) -> GadgetMap:
    """
        Chain of ``d`` bigons in place of every edge; ``d == 0`` is the identity.

        Each base edge becomes a path of ``d`` segments with ``d - 1`` new
        internal nodes, and every segment is doubled.
    """
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    if d == 0:
        return _identity_map(g, GadgetKind.BIGONS, {'d': 0, 'r': 2})
    return _chain(g, 2, d, GadgetKind.BIGONS)


def _chain(g: MultiGraph, r: int, d: int, kind: GadgetKind) -> GadgetMap:
    pairs: List[Tuple[int, int]] = []
    node_count = g.node_count
    per_base_edge: Dict[int, FrozenSet[int]] = {}
    segments: Dict[int, List[List[int]]] = {}
    weights = dict(g.node_weight) if g.node_weight is not None else None
    for edge in g.edges:
        path = [edge.u]
        for _ in range(d - 1):
            path.append(node_count)
            if weights is not None:
                weights[node_count] = 0
            node_count += 1
        path.append(edge.v)
        chain: List[List[int]] = []
        for a, b in zip(path, path[1:]):
            segment = []
            for _ in range(r):
                segment.append(len(pairs))
                pairs.append((a, b))
            chain.append(segment)
        segments[edge.id] = chain
        per_base_edge[edge.id] = frozenset(e for segment in chain for e in segment)
    derived = MultiGraph.from_pairs(node_count, pairs, weights)
    logger.debug(f"{kind.value}(r={r}, d={d}): {derived.node_count} nodes, {derived.number_of_edges} edges")
    return GadgetMap(
        kind=kind,
        base_graph=g,
        derived_graph=derived,
        per_base_edge=per_base_edge,
        original_nodes={v: v for v in g.nodes()},
        params={'d': d, 'r': r},
        segments=segments,
    )


def project_edges(m: GadgetMap, c: Iterable[int]) -> EdgeSet:
    """Base edges whose gadget meets ``c``."""
    owner = m.derived_to_base_edge()
    return frozenset(owner[e] for e in c if e in owner)


def pi_bigons(m: GadgetMap, c: Iterable[int]) -> EdgeSet:
    """
        Projection of derived edges onto the base edges of a chain of bigons.

        A simple cycle projects to a simple cycle of the base or to the single
        base edge owning a bigon.
    """
    return project_edges(m, c)


def pi_dipoles(m: GadgetMap, x: Iterable[int]) -> EdgeSet:
    return project_edges(m, x)


def lift(m: GadgetMap, y: Iterable[int]) -> LiftResult:
    """
        Canonical lift of a base dual k-partition through a chain gadget.

        Each base edge of ``y`` is replaced by the path taking the first
        parallel edge of every segment. The fiber holds ``r ** (d * |Y|)``
        lifts.

        Raises:
            GraphStructureError: If ``y`` is not a union of simple cycles
                (no ``k`` makes it a dual k-partition)
    """
    edges = frozenset(y)
    if not is_in_E2(m.base_graph, edges):
        raise GraphStructureError(
            "edge set is not a dual k-partition of the base graph (has a bridge or loop)"
        )
    k = h1(m.base_graph, edges) + 1
    lifted = frozenset(segment[0] for e in edges for segment in m.segments[e])
    r = max(len(m.segments[e][0]) for e in edges) if edges else 1
    count = r ** (m.d * len(edges)) if m.d else 1
    logger.debug(f"Lifted a dual {k}-partition of {len(edges)} edges; fiber size {r}^{m.d * len(edges)}")
    return LiftResult(lifted, count)


def doubled_star(g: MultiGraph, d: int, new_node_weight: Optional[int] = None) -> GadgetMap:
    """
        Replace every edge by ``d`` parallel edges, each subdivided once.

        Args:
            g: Base graph
            d: Parallel paths per edge, at least 1
            new_node_weight: When given (or when ``g`` is weighted) the derived
                graph is weighted and new nodes receive this weight (default 0)

        Example:
            >>> m = doubled_star(MultiGraph.from_pairs(2, [(0, 1)]), 3)
            >>> m.derived_graph.node_count
            5
    """
    if d < 1:
        raise ValueError(f"doubled stars need d >= 1, got {d}")
    pairs: List[Tuple[int, int]] = []
    node_count = g.node_count
    weighted = g.node_weight is not None or new_node_weight is not None
    weights: Optional[Dict[int, int]] = None
    if weighted:
        weights = {v: g.weight(v) for v in g.nodes()}
    per_base_edge: Dict[int, FrozenSet[int]] = {}
    segments: Dict[int, List[List[int]]] = {}
    for edge in g.edges:
        paths = []
        for _ in range(d):
            middle = node_count
            node_count += 1
            if weights is not None:
                weights[middle] = new_node_weight or 0
            paths.append([len(pairs), len(pairs) + 1])
            pairs.append((edge.u, middle))
            pairs.append((middle, edge.v))
        segments[edge.id] = paths
        per_base_edge[edge.id] = frozenset(e for path in paths for e in path)
    return GadgetMap(
        kind=GadgetKind.DOUBLED_STAR,
        base_graph=g,
        derived_graph=MultiGraph.from_pairs(node_count, pairs, weights),
        per_base_edge=per_base_edge,
        original_nodes={v: v for v in g.nodes()},
        params={'d': d},
        segments=segments,
    )


def restrict_doubled_star(m: GadgetMap, p: Partition) -> Partition:
    """
        Forget the subdivision nodes of a connected derived partition.

        The result is a connected partition of the base graph, possibly with
        an empty block (when one derived block holds only new nodes).

        Raises:
            InadmissibleStateError: If ``p`` is not a connected partition of the
                derived graph
    """
    if not is_connected_partition(m.derived_graph, p):
        raise InadmissibleStateError("restriction needs a connected partition of the derived graph")
    assign = tuple(p.assign[m.original_nodes[v]] for v in range(m.base_graph.node_count))
    return Partition(p.k, assign, allow_empty=True)


def fiber_sizes(items: Iterable[T], projection: Callable[[T], Hashable]) -> Dict[Hashable, int]:
    """
        Group derived objects by their projection and count each fiber.

        Example:
            >>> fiber_sizes(cycles, lambda c: pi_bigons(m, c))
    """
    counts: Dict[Hashable, int] = defaultdict(int)
    for item in items:
        counts[projection(item)] += 1
    return dict(counts)


def star_fiber_size(m: GadgetMap, base: Partition) -> int:
    """
        Closed-form fiber size over an unordered base 2-partition.

        ``2 ** (|cut| * d)`` when both blocks are nonempty; ``1 + d * |E|``
        over the single-block partition.
    """
    sizes = base.block_sizes()
    if min(sizes) == 0:
        return 1 + m.d * m.base_graph.number_of_edges
    crossing = sum(1 for e in m.base_graph.edges if base.assign[e.u] != base.assign[e.v])
    return 2 ** (crossing * m.d)
