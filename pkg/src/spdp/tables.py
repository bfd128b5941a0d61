"""
    Weighted three-way split tables for counting balanced connected 2-partitions.

    For a two-terminal graph with source ``s`` and sink ``t``, the table
    counts partitions of the nodes into connected blocks ``V1`` (holding
    ``s``), ``V2`` (holding neither terminal, possibly empty) and ``V3``
    (holding ``t``, empty exactly when ``t`` already sits in ``V1``), keyed by
    the monoid weights of the three blocks. It is read off a finer table on
    each subgraph of the SP tree that also records whether the terminals are
    joined inside the subgraph, so a block that only closes up outside is
    counted once.
"""

import logging
from itertools import product
from typing import Collection, Dict, List, Optional, Sequence

from ..errors import EnumerationGuardError
from ..graphs.core import block_is_connected
from ..models.graph_models import MultiGraph
from ..models.sp_models import ZERO, DPTableX, Junction, MonoidWeight, SPKind, SPTree, SplitTable
from .cycles import sp_completion

logger = logging.getLogger(__name__)

MAX_ENUMERATION_NODES = 12


def leaf_table(source_weight: MonoidWeight, sink_weight: MonoidWeight) -> SplitTable:
    """
        Table of a single edge: both ends together, or each end on its own.

        Example:
            >>> one = MonoidWeight(1, True)
            >>> sorted(key[0].value for key, _ in leaf_table(one, one).items())
            ['cross', 'joined']
    """
    table = SplitTable()
    table.add((Junction.JOINED, source_weight + sink_weight, ZERO, ZERO), 1)
    table.add((Junction.CROSS, source_weight, ZERO, sink_weight), 1)
    return table


def phantom_leaf_table(table: SplitTable) -> SplitTable:
    """Leaf table of a completion edge: a joined pair becomes split."""
    phantom = SplitTable()
    for (kind, source_part, floating, sink_part), count in table.items():
        kind = Junction.SPLIT if kind is Junction.JOINED else kind
        phantom.add((kind, source_part, floating, sink_part), count)
    return phantom


def _one_floating(f1: MonoidWeight, f2: MonoidWeight) -> bool:
    return f1.is_zero() or f2.is_zero()


def series_table(x1: SplitTable, x2: SplitTable) -> SplitTable:
    """
        Table of the series composition, the first sink glued to the second source.

        The shared node ``m`` becomes interior. When ``m`` sits in the
        source's block the second part extends that block; when it sits in a
        block of its own on both sides that block either reaches the sink or
        is closed off inside the composition and floats.
    """
    table = SplitTable()
    for (k1, p1, f1, r1), m1 in x1.items():
        for (k2, p2, f2, r2), m2 in x2.items():
            count = m1 * m2
            if k1 is Junction.JOINED:
                if _one_floating(f1, f2):
                    table.add((k2, p1 + p2, f1 + f2, r2), count)
            elif k1 is Junction.SPLIT:
                if k2 is Junction.JOINED and _one_floating(f1, f2):
                    table.add((Junction.SPLIT, p1 + p2, f1 + f2, ZERO), count)
            elif k2 is Junction.JOINED:
                if _one_floating(f1, f2):
                    table.add((Junction.CROSS, p1, f1 + f2, r1 + p2), count)
            elif k2 is Junction.CROSS and f1.is_zero() and f2.is_zero():
                # m's block is closed off; the sink rejoins the source's block or opens a third
                table.add((Junction.SPLIT, p1 + r2, r1 + p2, ZERO), count)
                table.add((Junction.CROSS, p1, r1 + p2, r2), count)
    return table


def parallel_table(x1: SplitTable, x2: SplitTable) -> SplitTable:
    """
        Table of the parallel composition (shared source, shared sink).

        Both sides must agree on whether the sink shares the source's block;
        the terminals are joined when either side joins them.
    """
    table = SplitTable()
    for (k1, p1, f1, r1), m1 in x1.items():
        for (k2, p2, f2, r2), m2 in x2.items():
            if not _one_floating(f1, f2):
                continue
            if (k1 is Junction.CROSS) != (k2 is Junction.CROSS):
                continue
            if k1 is Junction.CROSS:
                kind = Junction.CROSS
            elif Junction.JOINED in (k1, k2):
                kind = Junction.JOINED
            else:
                kind = Junction.SPLIT
            table.add((kind, p1 + p2, f1 + f2, r1 + r2), m1 * m2)
    return table


def split_table(
    tree: SPTree, weights: Sequence[int], phantom: Collection[int] = frozenset()
) -> SplitTable:
    """
        Split table of a whole decomposition tree under integer node weights.

        Leaves listed in ``phantom`` are completion edges: they shape the
        decomposition but connect nothing.

        Node weights enter each node once: the first leaf of the decomposition
        that touches a node carries its weight, every later leaf sees the node
        as ``(0, nonempty)``.
    """
    claimed = set()

    def claim(node: int) -> MonoidWeight:
        if node in claimed:
            return MonoidWeight(0, True)
        claimed.add(node)
        return MonoidWeight(weights[node], True)

    tables: Dict[int, SplitTable] = {}
    for node in tree.iter_postorder():
        if node.kind is SPKind.LEAF:
            leaf = leaf_table(claim(node.source), claim(node.sink))
            if node.edge in phantom:
                leaf = phantom_leaf_table(leaf)
            tables[id(node)] = leaf
            continue
        first, second = (tables.pop(id(child)) for child in node.children)
        if node.kind is SPKind.SERIES:
            tables[id(node)] = series_table(first, second)
        else:
            tables[id(node)] = parallel_table(first, second)
    return tables[id(tree)]


def x_table(tree: SPTree, weights: Sequence[int], phantom: Collection[int] = frozenset()) -> DPTableX:
    """
        Table of a whole decomposition tree under integer node weights.

        Args:
            tree: SP decomposition tree
            weights: Nonnegative weight per node of the underlying graph
            phantom: Leaf edge ids added by a treewidth-2 completion

        Example:
            >>> path = MultiGraph.from_pairs(3, [(0, 1), (1, 2)])
            >>> x_table(recognize_sp(path, 0, 2), [1, 1, 1]).total_mass()
            4
    """
    table = DPTableX()
    for (kind, source_part, floating, sink_part), count in split_table(tree, weights, phantom).items():
        if kind is not Junction.SPLIT:
            table.add((source_part, floating, sink_part), count)
    logger.debug(f"Split table with {len(table)} weight triples, mass of {table.total_mass().bit_length()} bits")
    return table


def x_table_by_enumeration(
    g: MultiGraph, source: int, sink: int, weights: Optional[Sequence[int]] = None
) -> DPTableX:
    """
        The same table by trying every assignment of nodes to the three blocks.

        Raises:
            EnumerationGuardError: Above ``MAX_ENUMERATION_NODES`` nodes
    """
    if g.node_count > MAX_ENUMERATION_NODES:
        raise EnumerationGuardError(
            f"split enumeration on {g.node_count} nodes exceeds the guard of {MAX_ENUMERATION_NODES}"
        )
    node_weights = list(weights) if weights is not None else g.weights()
    others = [v for v in g.nodes() if v not in (source, sink)]
    table = DPTableX()
    for sink_block in (0, 2):
        for labels in product(range(3), repeat=len(others)):
            blocks: List[set] = [{source}, set(), set()]
            blocks[sink_block].add(sink)
            for node, label in zip(others, labels):
                blocks[label].add(node)
            if sink_block == 0 and blocks[2]:
                continue
            if not all(block_is_connected(g, block) for block in blocks if block):
                continue
            first, middle, last = (
                MonoidWeight(sum(node_weights[v] for v in block), bool(block)) for block in blocks
            )
            table.add((first, middle, last), 1)
    return table


def count_balanced(g: MultiGraph, w: Optional[Sequence[int]] = None) -> int:
    """
        Number of unordered connected 2-partitions with equal block weights.

        Both blocks are nonempty; an odd total weight admits none.

        Args:
            g: Graph of treewidth at most two (self-loops are ignored)
            w: Nonnegative integer node weights (None reads the graph's own)

        Raises:
            ValueError: If a weight is negative or the weight count is wrong
            TreewidthError: If ``g`` has treewidth above two

        Example:
            >>> path4 = MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
            >>> count_balanced(path4)
            1
    """
    weights = list(w) if w is not None else g.weights()
    if len(weights) != g.node_count:
        raise ValueError(f"expected {g.node_count} weights, got {len(weights)}")
    if any(x < 0 for x in weights):
        raise ValueError("node weights must be nonnegative")
    total = sum(weights)
    if g.node_count < 2 or total % 2:
        return 0
    supergraph, tree, edge_map = sp_completion(g)
    real = set(edge_map.values())
    phantom = frozenset(e.id for e in supergraph.edges if e.id not in real)
    table = x_table(tree, weights, phantom)
    half = MonoidWeight(total // 2, True)
    return table.get((half, half, ZERO)) + table.get((half, ZERO, half))
