"""
    Random spanning trees and the balanced 2-partitions cut out of them.

    ``wilson_ust`` draws a uniform spanning tree by loop-erased random walks;
    ``random_mst`` takes the minimum spanning tree under fresh iid uniform
    edge weights. Removing one tree edge leaves two subtrees, which form a
    connected 2-partition of the graph; ``tree_partition`` keeps drawing
    until that partition is balanced.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Union

import networkx as nx
import numpy as np
from networkx.utils import UnionFind

from ..errors import GraphStructureError, NoSampleError
from ..graphs.core import cut, is_connected, to_fraction
from ..models.graph_models import EdgeSet, MultiGraph, Partition
from ..models.sampler_models import TreeKind, TreePartitionMode
from .rng import SeededRng

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction, str, float]


class TreeDraw(NamedTuple):
    """A tree partition with the edge that produced it and the trees it took."""

    partition: Partition
    edge: int
    attempts: int


def _require_connected(g: MultiGraph) -> None:
    if not is_connected(g):
        raise GraphStructureError("spanning trees need a connected graph")


def wilson_ust(g: MultiGraph, rng: SeededRng) -> EdgeSet:
    """
        Uniform spanning tree by loop-erased random walks.

        Each walk from a node outside the tree overwrites its exit edge at
        every visit, so following the exit edges afterwards traces the loop
        erasure. Parallel edges are distinct trees.

        Raises:
            GraphStructureError: If ``g`` is disconnected

        Example:
            >>> path = MultiGraph.from_pairs(3, [(0, 1), (1, 2)])
            >>> sorted(wilson_ust(path, SeededRng(0)))
            [0, 1]
    """
    _require_connected(g)
    adjacency = g.adjacency
    root = rng.integers(g.node_count)
    in_tree = [False] * g.node_count
    in_tree[root] = True
    exit_edge: Dict[int, int] = {}
    exit_node: Dict[int, int] = {}
    for start in range(g.node_count):
        node = start
        while not in_tree[node]:
            edge_id, other = rng.choice(adjacency[node])
            exit_edge[node] = edge_id
            exit_node[node] = other
            node = other
        node = start
        while not in_tree[node]:
            in_tree[node] = True
            node = exit_node[node]
    return frozenset(exit_edge[v] for v in range(g.node_count) if v != root)


def random_mst(g: MultiGraph, rng: SeededRng) -> EdgeSet:
    """
        Minimum spanning tree under iid Uniform[0, 1] edge weights.

        Kruskal's algorithm via networkx on the edge-id keyed multigraph.

        Raises:
            GraphStructureError: If ``g`` is disconnected
    """
    _require_connected(g)
    weights = rng.uniform_weights(g.number_of_edges)
    graph = g.to_networkx()
    for u, v, key in graph.edges(keys=True):
        graph[u][v][key]['weight'] = float(weights[key])
    spanning = nx.minimum_spanning_edges(graph, algorithm='kruskal', keys=True, data=False)
    return frozenset(key for _, _, key in spanning)


def draw_tree(g: MultiGraph, kind: Union[TreeKind, str], rng: SeededRng) -> EdgeSet:
    kind = TreeKind(kind)
    return wilson_ust(g, rng) if kind is TreeKind.UST else random_mst(g, rng)


def _balanced(a: int, b: int, tolerance: Fraction) -> bool:
    if a == 0 or b == 0:
        return a == b
    low, high = 1 - tolerance, 1 + tolerance
    return low <= Fraction(a, b) <= high and low <= Fraction(b, a) <= high


def _split_weights(g: MultiGraph, tree: EdgeSet, weights: Sequence[int]) -> Dict[int, int]:
    """Per tree edge, the node weight on the side away from node 0."""
    children: List[List[tuple]] = [[] for _ in range(g.node_count)]
    for edge_id in tree:
        u, v = g.endpoints(edge_id)
        children[u].append((edge_id, v))
        children[v].append((edge_id, u))
    parent_edge: Dict[int, int] = {}
    order = [0]
    seen = {0}
    for node in order:
        for edge_id, other in children[node]:
            if other not in seen:
                seen.add(other)
                parent_edge[other] = edge_id
                order.append(other)
    below = list(weights)
    sides: Dict[int, int] = {}
    for node in reversed(order[1:]):
        edge_id = parent_edge[node]
        sides[edge_id] = below[node]
        parent = g.other_end(edge_id, node)
        below[parent] += below[node]
    return sides


def _partition_without(g: MultiGraph, tree: EdgeSet, removed: int) -> Partition:
    forest = UnionFind(range(g.node_count))
    for edge_id in tree:
        if edge_id != removed:
            forest.union(*g.endpoints(edge_id))
    side = forest[0]
    return Partition(2, tuple(0 if forest[v] == side else 1 for v in range(g.node_count)))


def draw_tree_partition(
    g: MultiGraph,
    w: Optional[Sequence[int]],
    eps: Rational,
    tree_kind: Union[TreeKind, str],
    rng: SeededRng,
    max_retries: int = 1000,
    mode: Union[TreePartitionMode, str] = TreePartitionMode.REDRAW,
) -> TreeDraw:
    """
        Balanced connected 2-partition from one removed spanning tree edge.

        Args:
            g: Connected graph
            w: Node weights (None reads the graph's own)
            eps: Balance tolerance, at least 0
            tree_kind: ``ust`` or ``mst``
            rng: Random stream
            max_retries: Trees drawn before giving up
            mode: ``redraw`` picks uniformly among the balanced edges of a
                tree (redrawing when there are none); ``reject`` picks one
                uniform tree edge and redraws when it is unbalanced

        Raises:
            ValueError: If ``eps < 0``
            GraphStructureError: If ``g`` is disconnected or has one node
            NoSampleError: If ``max_retries`` trees produce no balanced edge
    """
    tolerance = to_fraction(eps)
    if tolerance < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    if g.node_count < 2:
        raise GraphStructureError("a 2-partition needs at least two nodes")
    mode = TreePartitionMode(mode)
    weights = list(w) if w is not None else g.weights()
    total = sum(weights)
    for attempt in range(1, max_retries + 1):
        tree = draw_tree(g, tree_kind, rng)
        sides = _split_weights(g, tree, weights)
        if mode is TreePartitionMode.REDRAW:
            valid = sorted(e for e, side in sides.items() if _balanced(side, total - side, tolerance))
            if not valid:
                continue
            edge_id = rng.choice(valid)
        else:
            edge_id = rng.choice(sorted(tree))
            if not _balanced(sides[edge_id], total - sides[edge_id], tolerance):
                continue
        logger.debug(f"Tree partition after {attempt} trees, removed edge {edge_id}")
        return TreeDraw(_partition_without(g, tree, edge_id), edge_id, attempt)
    raise NoSampleError(f"no eps-balanced tree edge found in {max_retries} trees")


def tree_partition(
    g: MultiGraph,
    w: Optional[Sequence[int]],
    eps: Rational,
    tree_kind: Union[TreeKind, str],
    rng: SeededRng,
    max_retries: int = 1000,
    mode: Union[TreePartitionMode, str] = TreePartitionMode.REDRAW,
) -> Partition:
    return draw_tree_partition(g, w, eps, tree_kind, rng, max_retries, mode).partition


def cut_edge_frequencies(g: MultiGraph, partitions: Iterable[Partition]) -> np.ndarray:
    """
        Fraction of the partitions cutting each edge.

        Example:
            >>> cut_edge_frequencies(c4, [Partition(2, (0, 0, 1, 1))])
            array([0., 1., 0., 1.])
    """
    counts = np.zeros(g.number_of_edges, dtype=float)
    total = 0
    for partition in partitions:
        total += 1
        for edge_id in cut(g, partition):
            counts[edge_id] += 1
    return counts / total if total else counts
