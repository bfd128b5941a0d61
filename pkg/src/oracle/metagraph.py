"""
    The flip walk as an explicit state graph, with exact bottleneck measurements.

    States are the connected 2-partitions of a small graph. Each state has one
    proposal per node (move it to the other block); inadmissible moves become
    self-loops, so the state graph is ``|V|``-regular. On top of it we compute
    exact transition kernels, bottleneck ratios, conductance and the
    purification structure used for the triangulation bottlenecks.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx
import numpy as np
import pandas as pd

from ..errors import EnumerationGuardError
from ..graphs.core import cut, to_fraction
from ..models.graph_models import MultiGraph, Partition, PlaneGraph
from ..models.oracle_models import ConductanceResult, MetaGraph, PurificationStructure
from .enumeration import connected_sets, enum_connected_partitions

logger = logging.getLogger(__name__)

DEFAULT_CONDUCTANCE_STATES = 20
DEFAULT_MAX_SUBSETS = 200_000
CHUNK_BITS = 16

Rational = Union[int, Fraction, str, float]


def build_flip_metagraph(
    g: MultiGraph,
    ordered: bool = True,
    allow_empty: bool = True,
    eps: Optional[Rational] = None,
    weights: Optional[Sequence[int]] = None,
    max_states: Optional[int] = None,
) -> MetaGraph:
    """
        Enumerate the admissible 2-partitions and wire up every single-node flip.

        Args:
            g: Base graph
            ordered: Keep block labels (unordered states are canonical forms)
            allow_empty: Admit the states with an empty block
            eps: Restrict to eps-balanced states
            weights: Node weights for the balance test
            max_states: Guard on the state count

        Example:
            >>> mg = build_flip_metagraph(c4, allow_empty=False)
            >>> {len(row) for row in mg.adjacency}
            {4}
    """
    states = enum_connected_partitions(
        g, 2, ordered=ordered, allow_empty=allow_empty, eps=eps, weights=weights, max_states=max_states
    )
    index = {state.assign: i for i, state in enumerate(states)}
    adjacency: List[List[int]] = []
    for position, state in enumerate(states):
        row = []
        for node in g.nodes():
            assign = list(state.assign)
            assign[node] = 1 - assign[node]
            key = tuple(assign)
            if not ordered:
                key = Partition(2, key, allow_empty=True).canonical().assign
            row.append(index.get(key, position))
        adjacency.append(row)
    metagraph = MetaGraph(
        states=states,
        adjacency=adjacency,
        degree=g.node_count,
        cut_sizes=[len(cut(g, state)) for state in states],
        ordered=ordered,
        allow_empty=allow_empty,
        index=index,
    )
    logger.debug(f"Flip meta-graph: {metagraph.size} states, degree {metagraph.degree}")
    return metagraph


def is_irreducible(mg: MetaGraph) -> bool:
    """Whether the flip moves connect every pair of states."""
    if mg.size == 0:
        return False
    moves = nx.DiGraph()
    moves.add_nodes_from(range(mg.size))
    moves.add_edges_from((state, target) for state in range(mg.size) for target in mg.neighbors(state))
    return nx.is_strongly_connected(moves)


def bottleneck_ratio(mg: MetaGraph, subset: Sequence[int]) -> Fraction:
    """
        ``|boundary(U)| / (2 * degree * |U|)`` for the lazy walk.

        Raises:
            ValueError: If ``subset`` is empty
    """
    members = frozenset(subset)
    if not members:
        raise ValueError("bottleneck ratio of an empty set is undefined")
    return Fraction(mg.boundary(members), 2 * mg.degree * len(members))


def mixing_lower_bound(phi: Rational) -> Fraction:
    """
        Conductance bound on the mixing time: ``t_mix(1/4) >= 1 / (4 phi)``.

        Example:
            >>> mixing_lower_bound(Fraction(1, 8))
            Fraction(2, 1)
    """
    value = to_fraction(phi)
    if value <= 0:
        raise ValueError(f"conductance must be positive, got {phi}")
    return 1 / (4 * value)


def _multiplicity_matrix(mg: MetaGraph) -> np.ndarray:
    counts = np.zeros((mg.size, mg.size), dtype=np.int64)
    for state, row in enumerate(mg.adjacency):
        for target in row:
            if target != state:
                counts[state, target] += 1
    return counts


def exact_conductance(
    mg: MetaGraph,
    max_states: int = DEFAULT_CONDUCTANCE_STATES,
    fallback: bool = False,
    max_subsets: int = DEFAULT_MAX_SUBSETS,
) -> ConductanceResult:
    """
        Minimum bottleneck ratio over subsets holding at most half the states.

        Small state spaces are scanned completely. Larger ones raise unless
        ``fallback`` is set, in which case only subsets connected in the
        meta-graph are tried (at most ``max_subsets`` of them) and the result
        is flagged as an upper bound.

        Raises:
            EnumerationGuardError: If the state space exceeds ``max_states``
                and ``fallback`` is off
    """
    if mg.size < 2:
        raise ValueError("conductance needs at least two states")
    if mg.size <= max_states:
        return _full_scan(mg)
    if not fallback:
        raise EnumerationGuardError(
            f"{mg.size} states exceed the exact conductance guard of {max_states}; "
            f"use bottleneck_ratio on a chosen subset or enable the connected-subset fallback"
        )
    return _connected_scan(mg, max_subsets)


def _full_scan(mg: MetaGraph) -> ConductanceResult:
    n = mg.size
    counts = _multiplicity_matrix(mg)
    outgoing = counts.sum(axis=1)
    bits = np.arange(n, dtype=np.int64)
    best: Optional[Tuple[Fraction, int]] = None
    examined = 0
    chunk = 1 << min(CHUNK_BITS, n)
    for start in range(1, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        members = ((masks[:, None] >> bits[None, :]) & 1).astype(np.int64)
        sizes = members.sum(axis=1)
        keep = 2 * sizes <= n
        if not keep.any():
            continue
        members, sizes, masks = members[keep], sizes[keep], masks[keep]
        inside = ((members @ counts) * members).sum(axis=1)
        boundary = members @ outgoing - inside
        examined += len(masks)
        ratios = boundary / sizes
        low = ratios.min()
        for row in np.flatnonzero(ratios <= low + 1e-12):
            value = Fraction(int(boundary[row]), 2 * mg.degree * int(sizes[row]))
            if best is None or value < best[0]:
                best = (value, int(masks[row]))
    value, mask = best  # type: ignore[misc]
    subset = frozenset(state for state in range(n) if mask >> state & 1)
    logger.debug(f"Exact conductance {value} over {examined} subsets")
    return ConductanceResult(value=value, subset=subset, exact=True, examined=examined)


def _connected_scan(mg: MetaGraph, max_subsets: int) -> ConductanceResult:
    pairs = [
        (state, target)
        for state in range(mg.size)
        for target in sorted(mg.neighbors(state))
        if state < target
    ]
    skeleton = MultiGraph.from_pairs(mg.size, pairs)
    half = mg.size // 2
    best: Optional[Tuple[Fraction, FrozenSet[int]]] = None
    examined = 0
    for root in range(mg.size):
        allowed = set(range(root, mg.size))
        for subset in connected_sets(skeleton, root, allowed, max_size=half):
            examined += 1
            value = bottleneck_ratio(mg, subset)
            if best is None or value < best[0]:
                best = (value, subset)
            if examined >= max_subsets:
                break
        if examined >= max_subsets:
            logger.warning(f"Connected-subset search stopped after {examined} subsets")
            break
    value, subset = best  # type: ignore[misc]
    return ConductanceResult(value=value, subset=subset, exact=False, examined=examined)


def fiber_bottleneck(mg: MetaGraph, predicate: Callable[[Partition], bool]) -> Fraction:
    """
        Bottleneck ratio of the states selected by ``predicate``.

        Example:
            >>> fiber_bottleneck(mg, lambda p: restrict_doubled_star(m, p) == base)
    """
    subset = [state for state, partition in enumerate(mg.states) if predicate(partition)]
    return bottleneck_ratio(mg, subset)


def transition_matrix(
    mg: MetaGraph, laziness: Rational = Fraction(1, 2), lam: Rational = 1
) -> List[List[Fraction]]:
    """
        Exact kernel of the lazy Metropolis flip walk targeting ``lam ** |cut|``.

        A proposal is drawn uniformly among the ``degree`` nodes; an
        admissible move is accepted with probability
        ``min(1, lam ** (cut' - cut))``. Everything else stays put.
    """
    hold = to_fraction(laziness)
    weight = to_fraction(lam)
    if not 0 <= hold < 1:
        raise ValueError(f"laziness must lie in [0, 1), got {laziness}")
    if weight <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    step = (1 - hold) / mg.degree
    matrix = [[Fraction(0)] * mg.size for _ in range(mg.size)]
    for state, row in enumerate(mg.adjacency):
        for target in row:
            if target == state:
                continue
            accept = min(Fraction(1), weight ** (mg.cut_sizes[target] - mg.cut_sizes[state]))
            matrix[state][target] += step * accept
        matrix[state][state] = 1 - sum(matrix[state])
    return matrix


def stationary_weights(mg: MetaGraph, lam: Rational = 1) -> List[Fraction]:
    """Normalized ``lam ** |cut|`` over the states."""
    weight = to_fraction(lam)
    masses = [weight ** size for size in mg.cut_sizes]
    total = sum(masses, Fraction(0))
    return [mass / total for mass in masses]


def detailed_balance_holds(matrix: Sequence[Sequence[Fraction]], pi: Sequence[Fraction]) -> bool:
    """Exact check of ``pi(x) P(x, y) == pi(y) P(y, x)`` for every pair."""
    size = len(pi)
    return all(
        pi[x] * matrix[x][y] == pi[y] * matrix[y][x] for x in range(size) for y in range(x + 1, size)
    )


def stationary_by_power_iteration(
    matrix: Sequence[Sequence[Rational]], tol: float = 1e-12, max_iter: int = 100_000
) -> np.ndarray:
    """
        Fixed point of ``mu -> mu P`` started from a point mass on state 0.

        Returns:
            Stationary vector as a float array

        Raises:
            RuntimeError: If ``max_iter`` steps do not reach ``tol``
    """
    kernel = np.array([[float(value) for value in row] for row in matrix], dtype=float)
    mu = np.zeros(kernel.shape[0])
    mu[0] = 1.0
    for iteration in range(max_iter):
        nxt = mu @ kernel
        if np.abs(nxt - mu).sum() < tol:
            logger.debug(f"Power iteration converged after {iteration + 1} steps")
            return nxt
        mu = nxt
    raise RuntimeError(f"power iteration did not converge in {max_iter} steps")


def states_frame(mg: MetaGraph) -> pd.DataFrame:
    """One row per state, for CSV inspection of small state spaces."""
    return pd.DataFrame({
        'state': range(mg.size),
        'assign': [''.join(str(block) for block in state.assign) for state in mg.states],
        'cut_size': mg.cut_sizes,
        'self_loops': [mg.self_loops(state) for state in range(mg.size)],
        'neighbors': [len(mg.neighbors(state)) for state in range(mg.size)],
    })


def purification_structure(mg: MetaGraph, plane: PlaneGraph) -> PurificationStructure:
    """
        Drop purifying moves and compute what each state still reaches.

        A move is purifying when some face that is mixed before the move
        (meets both blocks) is pure afterwards.

        Example:
            >>> ps = purification_structure(build_flip_metagraph(k4.graph, ordered=False), k4)
            >>> len(ps.isolated_states())
            3
    """
    faces = list(plane.iter_face_node_sets())

    def mixed(state: Partition) -> Tuple[bool, ...]:
        return tuple(len({state.assign[node] for node in face}) > 1 for face in faces)

    profiles = [mixed(state) for state in mg.states]
    directed: List[Set[int]] = []
    purifying: Set[Tuple[int, int]] = set()
    for state in range(mg.size):
        successors = set()
        for target in mg.neighbors(state):
            if any(before and not after for before, after in zip(profiles[state], profiles[target])):
                purifying.add((state, target))
            else:
                successors.add(target)
        directed.append(successors)

    moves = nx.DiGraph()
    moves.add_nodes_from(range(mg.size))
    moves.add_edges_from((state, target) for state in range(mg.size) for target in directed[state])
    reach = [frozenset(nx.descendants(moves, state) | {state}) for state in range(mg.size)]
    logger.debug(f"{len(purifying)} purifying moves among {mg.size} states")
    return PurificationStructure(
        mixed_faces=[sum(profile) for profile in profiles],
        directed=directed,
        purifying=purifying,
        reach=reach,
    )


def fiber_index(mg: MetaGraph, projection: Callable[[Partition], object]) -> Dict[object, List[int]]:
    """Group states by the value of ``projection``."""
    groups: Dict[object, List[int]] = {}
    for state, partition in enumerate(mg.states):
        groups.setdefault(projection(partition), []).append(state)
    return groups
