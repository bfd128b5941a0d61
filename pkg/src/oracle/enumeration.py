"""
    Brute-force enumeration of simple cycles, simple paths and connected partitions.

    These oracles are exponential and guarded: each refuses to run past its
    configured size unless the caller overrides the guard. Results are
    returned in a canonical order independent of traversal details.
"""

import logging
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Union

from ..errors import EnumerationGuardError
from ..graphs.core import block_is_connected, is_eps_balanced, to_fraction
from ..models.graph_models import EdgeSet, MultiGraph, Partition

logger = logging.getLogger(__name__)

DEFAULT_MAX_EDGES = 30
DEFAULT_MAX_STATES = 200_000

Rational = Union[int, Fraction, str, float]


def _check_edge_guard(g: MultiGraph, max_edges: Optional[int], what: str) -> None:
    limit = DEFAULT_MAX_EDGES if max_edges is None else max_edges
    if limit >= 0 and g.number_of_edges > limit:
        raise EnumerationGuardError(
            f"{what} on {g.number_of_edges} edges exceeds the guard of {limit}; "
            f"raise enumeration.max_edges or pass max_edges=-1 to override"
        )


def enum_simple_cycles(g: MultiGraph, max_edges: Optional[int] = None) -> List[EdgeSet]:
    """
        Every simple cycle of a multigraph, once, as an edge set.

        Two parallel edges form a cycle; self-loops are not cycles.

        Args:
            g: Multigraph
            max_edges: Guard on ``|E|`` (None reads the default 30, negative disables)

        Raises:
            EnumerationGuardError: If the graph is larger than the guard

        Example:
            >>> k4 = MultiGraph.from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            >>> len(enum_simple_cycles(k4))
            7
    """
    _check_edge_guard(g, max_edges, 'cycle enumeration')
    adjacency = g.adjacency
    cycles: List[EdgeSet] = []

    for start in range(g.node_count):
        on_path = {start}
        path_edges: List[int] = []

        def extend(node: int) -> None:
            for edge_id, other in adjacency[node]:
                if other == start:
                    if path_edges and edge_id != path_edges[0] and path_edges[0] < edge_id:
                        cycles.append(frozenset(path_edges + [edge_id]))
                    continue
                if other < start or other in on_path:
                    continue
                on_path.add(other)
                path_edges.append(edge_id)
                extend(other)
                path_edges.pop()
                on_path.discard(other)

        extend(start)

    logger.debug(f"Enumerated {len(cycles)} simple cycles on {g.number_of_edges} edges")
    return sorted(cycles, key=lambda c: (len(c), sorted(c)))


def enum_simple_paths(
    g: MultiGraph, source: int, target: int, max_edges: Optional[int] = None
) -> List[EdgeSet]:
    """
        Every simple path from ``source`` to ``target`` as an edge set.

        Parallel edges give distinct paths.

        Raises:
            ValueError: If ``source == target``
            EnumerationGuardError: If the graph is larger than the guard
    """
    if source == target:
        raise ValueError("simple paths need distinct endpoints")
    _check_edge_guard(g, max_edges, 'path enumeration')
    adjacency = g.adjacency
    paths: List[EdgeSet] = []
    on_path = {source}
    path_edges: List[int] = []

    def extend(node: int) -> None:
        for edge_id, other in adjacency[node]:
            if other in on_path:
                continue
            if other == target:
                paths.append(frozenset(path_edges + [edge_id]))
                continue
            on_path.add(other)
            path_edges.append(edge_id)
            extend(other)
            path_edges.pop()
            on_path.discard(other)

    extend(source)
    return sorted(paths, key=lambda p: (len(p), sorted(p)))


def connected_sets(
    g: MultiGraph, root: int, allowed: Set[int], max_size: Optional[int] = None
) -> Iterator[frozenset]:
    """
        Every connected node set containing ``root`` inside ``allowed``, once each.

        Sets larger than ``max_size`` are neither yielded nor grown.

        Frontier/exclusion branching: choosing frontier node ``i`` forbids the
        frontier nodes before it in that branch.
    """
    neighbors = g.neighbor_lists

    def grow(members: frozenset, frontier: List[int], forbidden: frozenset) -> Iterator[frozenset]:
        yield members
        if max_size is not None and len(members) >= max_size:
            return
        for index, node in enumerate(frontier):
            blocked = forbidden | frozenset(frontier[:index])
            grown = members | {node}
            rest = frontier[index + 1:]
            seen = set(rest)
            for other in neighbors[node]:
                if other in allowed and other not in grown and other not in blocked and other not in seen:
                    rest.append(other)
                    seen.add(other)
            yield from grow(grown, rest, blocked)

    start: List[int] = []
    for other in neighbors[root]:
        if other in allowed and other != root and other not in start:
            start.append(other)
    yield from grow(frozenset({root}), start, frozenset())


def _component_count(g: MultiGraph, members: Set[int]) -> int:
    remaining = set(members)
    count = 0
    neighbors = g.neighbor_lists
    while remaining:
        count += 1
        stack = [remaining.pop()]
        while stack:
            node = stack.pop()
            for other in neighbors[node]:
                if other in remaining:
                    remaining.discard(other)
                    stack.append(other)
    return count


def _unordered_nonempty(
    g: MultiGraph, k: int, guard: Callable[[int], None]
) -> List[List[frozenset]]:
    found: List[List[frozenset]] = []

    def split(remaining: Set[int], blocks: List[frozenset], left: int) -> None:
        if left == 1:
            if remaining and block_is_connected(g, remaining):
                found.append(blocks + [frozenset(remaining)])
                guard(len(found))
            return
        root = min(remaining)
        for block in connected_sets(g, root, remaining):
            rest = remaining - block
            if len(rest) < left - 1:
                continue
            if _component_count(g, rest) > left - 1:
                continue
            split(rest, blocks + [block], left - 1)

    if g.node_count >= k:
        split(set(range(g.node_count)), [], k)
    return found


def enum_connected_partitions(
    g: MultiGraph,
    k: int,
    ordered: bool = False,
    allow_empty: bool = False,
    eps: Optional[Rational] = None,
    weights: Optional[Sequence[int]] = None,
    max_states: Optional[int] = None,
) -> List[Partition]:
    """
        All connected k-partitions, ordered or unordered.

        Unordered partitions come in canonical form (blocks numbered by
        smallest node, empty blocks last). Ordered partitions list every
        assignment of block labels.

        Args:
            g: Graph
            k: Number of blocks
            ordered: Distinguish block labels
            allow_empty: Admit partitions with fewer than ``k`` nonempty blocks
            eps: Keep only eps-balanced partitions (``k == 2``)
            weights: Node weights for the balance test
            max_states: Guard on the number of partitions produced

        Raises:
            EnumerationGuardError: If more than ``max_states`` partitions arise

        Example:
            >>> c4 = MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
            >>> len(enum_connected_partitions(c4, 2))
            6
    """
    if k < 1:
        raise ValueError("k must be positive")
    limit = DEFAULT_MAX_STATES if max_states is None else max_states

    def guard(count: int) -> None:
        if 0 <= limit < count:
            raise EnumerationGuardError(
                f"more than {limit} partitions; raise enumeration.max_states to continue"
            )

    unordered: List[List[frozenset]] = []
    sizes = range(1, k + 1) if allow_empty else [k]
    for blocks_used in sizes:
        unordered.extend(_unordered_nonempty(g, blocks_used, guard))
        guard(len(unordered))

    results: List[Partition] = []
    for blocks in unordered:
        used = len(blocks)
        empty = used < k
        if ordered:
            for labels in permutations(range(k), used):
                assign = [0] * g.node_count
                for label, block in zip(labels, blocks):
                    for node in block:
                        assign[node] = label
                results.append(Partition(k, tuple(assign), allow_empty=empty))
                guard(len(results))
        else:
            assign = [0] * g.node_count
            for label, block in enumerate(blocks):
                for node in block:
                    assign[node] = label
            results.append(Partition(k, tuple(assign), allow_empty=empty))

    if eps is not None:
        tolerance = to_fraction(eps)
        results = [p for p in results if is_eps_balanced(g, p, tolerance, weights)]
    results.sort(key=lambda p: p.assign)
    logger.debug(f"Enumerated {len(results)} connected {k}-partitions (ordered={ordered})")
    return results


def n_lambda(j: Iterable[int], lam: Rational) -> Fraction:
    """Mass ``lambda ** |J|`` of one edge set."""
    return to_fraction(lam) ** len(set(j))


def n_lambda_mass(sets: Sequence[Iterable[int]], lam: Rational) -> Fraction:
    """
        Total ``N_lambda`` mass of a family of edge sets.

        Raises:
            ValueError: If ``lam <= 0``
    """
    value = to_fraction(lam)
    if value <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return sum((n_lambda(j, value) for j in sets), Fraction(0))


def nu_lambda(sets: Sequence[Iterable[int]], lam: Rational) -> List[Fraction]:
    """
        Normalized ``N_lambda`` distribution over a family.

        Example:
            >>> nu_lambda([{0}, {0, 1}], Fraction(1, 2))
            [Fraction(2, 3), Fraction(1, 3)]

        Raises:
            ValueError: If the family is empty or ``lam <= 0``
    """
    if not sets:
        raise ValueError("nu_lambda of an empty family is undefined")
    total = n_lambda_mass(sets, lam)
    return [n_lambda(j, lam) / total for j in sets]


def n_c_mass(j: Iterable[int], c: Mapping[int, Rational]) -> Fraction:
    """Edge-weight mass ``prod c(e)`` of one edge set."""
    mass = Fraction(1)
    for edge_id in j:
        mass *= to_fraction(c[edge_id])
    return mass


def nu_c(sets: Sequence[Iterable[int]], c: Mapping[int, Rational]) -> List[Fraction]:
    if not sets:
        raise ValueError("nu_c of an empty family is undefined")
    masses = [n_c_mass(j, c) for j in sets]
    total = sum(masses, Fraction(0))
    if total == 0:
        raise ValueError("family has zero total mass")
    return [mass / total for mass in masses]


def tv_distance(
    p: Union[Sequence[Rational], Mapping[object, Rational]],
    q: Union[Sequence[Rational], Mapping[object, Rational]],
) -> Union[Fraction, float]:
    """
        Total variation distance ``(1/2) sum |p(x) - q(x)|``.

        Sequences must have equal length; mappings are compared on the union
        of their keys. Exact when every value is rational.
    """
    if isinstance(p, Mapping) and isinstance(q, Mapping):
        keys = set(p) | set(q)
        pairs = [(p.get(key, 0), q.get(key, 0)) for key in keys]
    else:
        if len(p) != len(q):  # type: ignore[arg-type]
            raise ValueError("distributions must share a support index")
        pairs = list(zip(p, q))  # type: ignore[arg-type]
    if any(isinstance(x, float) or isinstance(y, float) for x, y in pairs):
        return 0.5 * sum(abs(float(x) - float(y)) for x, y in pairs)
    return Fraction(1, 2) * sum((abs(Fraction(x) - Fraction(y)) for x, y in pairs), Fraction(0))
