"""
    Series-parallel recognition by reduction, and treewidth-2 completion.

    A two-terminal graph is series-parallel when repeatedly merging parallel
    edges and splicing out non-terminal nodes of degree two leaves a single
    edge between the terminals. Each merge or splice builds one node of the
    decomposition tree, so a successful reduction hands back the tree.

    Graphs of treewidth at most two that are not series-parallel themselves
    are completed to a 2-tree (which is) by adding edges; the added edges
    carry zero weight in every dynamic program that runs on the completion.
"""

import logging
from collections import defaultdict
from itertools import combinations
from typing import Dict, List, Optional, Set, Tuple

from ..errors import NotSeriesParallelError, TreewidthError
from ..models.graph_models import MultiGraph
from ..models.sp_models import SPKind, SPTree

logger = logging.getLogger(__name__)

# Beyond this many nodes the all-pairs terminal search is not attempted.
MAX_TERMINAL_SEARCH_NODES = 40


class _Reducer:
    """Live edges of a graph under series and parallel reduction."""

    def __init__(self, g: MultiGraph):
        self.live: Dict[int, SPTree] = {}
        self.incident: Dict[int, Set[int]] = defaultdict(set)
        for edge in g.edges:
            if edge.u == edge.v:
                raise NotSeriesParallelError(f"edge {edge.id} is a self-loop")
            self.live[edge.id] = SPTree(SPKind.LEAF, edge.u, edge.v, edge=edge.id)
            self.incident[edge.u].add(edge.id)
            self.incident[edge.v].add(edge.id)
        self.next_key = g.number_of_edges

    def _add(self, tree: SPTree) -> None:
        key = self.next_key
        self.next_key += 1
        self.live[key] = tree
        self.incident[tree.source].add(key)
        self.incident[tree.sink].add(key)

    def _remove(self, key: int) -> SPTree:
        tree = self.live.pop(key)
        self.incident[tree.source].discard(key)
        self.incident[tree.sink].discard(key)
        return tree

    def merge_parallel(self) -> bool:
        groups: Dict[frozenset, List[int]] = defaultdict(list)
        for key, tree in self.live.items():
            groups[frozenset((tree.source, tree.sink))].append(key)
        merged = False
        for keys in groups.values():
            if len(keys) < 2:
                continue
            merged = True
            combined = self._remove(keys[0])
            for key in keys[1:]:
                other = self._remove(key)
                if other.source != combined.source:
                    other = other.reversed()
                combined = SPTree(
                    SPKind.PARALLEL, combined.source, combined.sink, children=(combined, other)
                )
            self._add(combined)
        return merged

    def splice_series(self, protected: Set[int]) -> bool:
        spliced = False
        for node in list(self.incident):
            keys = self.incident[node]
            if node in protected or len(keys) != 2:
                continue
            first_key, second_key = sorted(keys)
            first, second = self.live[first_key], self.live[second_key]
            a = first.source if first.sink == node else first.sink
            b = second.sink if second.source == node else second.source
            if a == b:
                continue
            self._remove(first_key)
            self._remove(second_key)
            if first.sink != node:
                first = first.reversed()
            if second.source != node:
                second = second.reversed()
            self._add(SPTree(SPKind.SERIES, a, b, children=(first, second)))
            spliced = True
        return spliced

    def run(self, protected: Set[int]) -> List[SPTree]:
        while True:
            merged = self.merge_parallel()
            spliced = self.splice_series(protected)
            if not merged and not spliced:
                return list(self.live.values())


def _check_spans(g: MultiGraph) -> None:
    if g.number_of_edges == 0:
        raise NotSeriesParallelError("a graph without edges has no SP decomposition")
    touched = {end for edge in g.edges for end in (edge.u, edge.v)}
    if len(touched) != g.node_count:
        raise NotSeriesParallelError(f"{g.node_count - len(touched)} isolated nodes")


def recognize_sp(g: MultiGraph, source: int, sink: int) -> SPTree:
    """
        Decomposition tree of ``g`` with the given terminals.

        Args:
            g: Connected multigraph without self-loops
            source: Source terminal
            sink: Sink terminal, different from ``source``

        Returns:
            SPTree whose root runs from ``source`` to ``sink``

        Raises:
            ValueError: If ``source == sink``
            NotSeriesParallelError: If the reduction gets stuck before a single edge

        Example:
            >>> theta = MultiGraph.from_pairs(4, [(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)])
            >>> recognize_sp(theta, 0, 3).kind
            <SPKind.PARALLEL: 'parallel'>
    """
    if source == sink:
        raise ValueError("terminals must be distinct")
    _check_spans(g)
    remaining = _Reducer(g).run({source, sink})
    if len(remaining) != 1:
        raise NotSeriesParallelError(
            f"reduction stuck with {len(remaining)} edges between terminals {source} and {sink}"
        )
    tree = remaining[0]
    if {tree.source, tree.sink} != {source, sink}:
        raise NotSeriesParallelError(f"reduced edge joins {tree.source} and {tree.sink}, not the terminals")
    return tree if tree.source == source else tree.reversed()


def find_sp_terminals(g: MultiGraph) -> SPTree:
    """
        Decomposition tree of ``g`` for some choice of terminals.

        Reduces without protecting any node first; a single surviving edge
        names valid terminals. Otherwise every node pair is tried on graphs
        up to ``MAX_TERMINAL_SEARCH_NODES`` nodes.

        Raises:
            NotSeriesParallelError: If no pair of terminals works
    """
    _check_spans(g)
    remaining = _Reducer(g).run(set())
    if len(remaining) == 1:
        return remaining[0]
    if g.node_count > MAX_TERMINAL_SEARCH_NODES:
        raise NotSeriesParallelError(
            f"free reduction left {len(remaining)} edges and the graph is too large for a terminal search"
        )
    for source, sink in combinations(range(g.node_count), 2):
        try:
            return recognize_sp(g, source, sink)
        except NotSeriesParallelError:
            continue
    raise NotSeriesParallelError("no pair of terminals makes the graph series-parallel")


def is_series_parallel(g: MultiGraph, source: Optional[int] = None, sink: Optional[int] = None) -> bool:
    try:
        if source is None or sink is None:
            find_sp_terminals(g)
        else:
            recognize_sp(g, source, sink)
    except NotSeriesParallelError:
        return False
    return True


def validate_sp_tree(tree: SPTree, g: MultiGraph) -> None:
    """
        Check that composing the tree's leaves reproduces ``g``.

        Every edge of ``g`` must appear as exactly one leaf with matching
        endpoints, series children must share the middle terminal and
        parallel children must share both terminals.

        Raises:
            NotSeriesParallelError: On the first violation found
    """
    seen: Set[int] = set()
    for node in tree.iter_postorder():
        if node.kind is SPKind.LEAF:
            if node.edge in seen:
                raise NotSeriesParallelError(f"edge {node.edge} appears twice")
            seen.add(node.edge)
            if {node.source, node.sink} != set(g.endpoints(node.edge)):
                raise NotSeriesParallelError(f"leaf of edge {node.edge} has the wrong endpoints")
            continue
        first, second = node.children
        if node.kind is SPKind.SERIES:
            ok = first.source == node.source and first.sink == second.source and second.sink == node.sink
        else:
            ok = all(c.source == node.source and c.sink == node.sink for c in node.children)
        if not ok:
            raise NotSeriesParallelError(f"{node.kind.value} node {node.source}->{node.sink} does not compose")
    if seen != set(range(g.number_of_edges)):
        raise NotSeriesParallelError(f"edges {sorted(set(range(g.number_of_edges)) - seen)} are missing")


def embed_treewidth2(g: MultiGraph) -> Tuple[MultiGraph, SPTree, Dict[int, int]]:
    """
        Series-parallel supergraph of a graph of treewidth at most two.

        Eliminates nodes of degree at most two (joining the two neighbors of
        each eliminated node), rebuilds the elimination as a 2-tree and adds
        the 2-tree edges missing from ``g``. Self-loops of ``g`` are dropped;
        every other edge keeps its position, the added edges come after.

        Args:
            g: Multigraph with at least two nodes

        Returns:
            Tuple of (supergraph, its SP tree, edge map from ``g`` to the supergraph)

        Raises:
            TreewidthError: If some elimination step finds no node of degree two or less

        Example:
            >>> c4 = MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
            >>> sup, tree, edge_map = embed_treewidth2(c4)
            >>> sup.number_of_edges
            5
    """
    if g.node_count < 2:
        raise TreewidthError("completion needs at least two nodes")
    adjacency: Dict[int, Set[int]] = {v: set() for v in g.nodes()}
    for edge in g.edges:
        if edge.u != edge.v:
            adjacency[edge.u].add(edge.v)
            adjacency[edge.v].add(edge.u)

    order: List[Tuple[int, Tuple[int, ...]]] = []
    current = {v: set(others) for v, others in adjacency.items()}
    while len(current) > 2:
        node = min(current, key=lambda v: (len(current[v]), v))
        later = current[node]
        if len(later) > 2:
            raise TreewidthError(f"every remaining node has degree above two ({len(later)} at least)")
        order.append((node, tuple(sorted(later))))
        for other in later:
            current[other].discard(node)
        if len(later) == 2:
            a, b = later
            current[a].add(b)
            current[b].add(a)
        del current[node]

    p, q = sorted(current)
    tree_adj: Dict[int, Set[int]] = {p: {q}, q: {p}}
    two_tree: List[Tuple[int, int]] = [(p, q)]
    for node, later in reversed(order):
        if len(later) == 2:
            a, b = later
        elif len(later) == 1:
            a = later[0]
            b = min(tree_adj[a])
        else:
            a, b = two_tree[0]
        tree_adj[node] = {a, b}
        tree_adj[a].add(node)
        tree_adj[b].add(node)
        two_tree.extend([(node, a), (node, b)])

    pairs: List[Tuple[int, int]] = []
    edge_map: Dict[int, int] = {}
    for edge in g.edges:
        if edge.u == edge.v:
            continue
        edge_map[edge.id] = len(pairs)
        pairs.append((edge.u, edge.v))
    added = 0
    for a, b in two_tree:
        if b not in adjacency[a]:
            pairs.append((a, b))
            added += 1
    supergraph = MultiGraph.from_pairs(g.node_count, pairs, g.node_weight)
    tree = recognize_sp(supergraph, p, q)
    logger.debug(f"Completed treewidth-2 graph with {added} zero-weight edges (terminals {p}, {q})")
    return supergraph, tree, edge_map
