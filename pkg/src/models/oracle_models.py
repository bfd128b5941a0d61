"""
    Data models for the exact oracles: flip-walk meta-graphs, conductance
    results and the purification structure.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .graph_models import Partition


@dataclass
class MetaGraph:
    """
        State graph of the flip walk on connected 2-partitions.

        Every state has exactly one proposal per node of the base graph: move
        that node to the other block. ``adjacency[s][v]`` is the state reached
        by proposal ``v`` from ``s``, or ``s`` itself when the move is
        inadmissible (a self-loop). Rows therefore have length ``|V|``.

        Attributes:
            states: Admissible partitions, in enumeration order
            adjacency: Per state, target state index for each node proposal
            degree: Number of proposals per state (``|V|`` of the base graph)
            cut_sizes: ``|cut|`` per state, used by Metropolis kernels
            ordered: Whether block labels distinguish states
            allow_empty: Whether the ``(V, empty)`` states are admissible
    """

    states: List[Partition]
    adjacency: List[List[int]]
    degree: int
    cut_sizes: List[int]
    ordered: bool = True
    allow_empty: bool = True
    index: Dict[Tuple[int, ...], int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        for state, row in enumerate(self.adjacency):
            if len(row) != self.degree:
                raise ValueError(f"state {state} has {len(row)} proposals, expected {self.degree}")
        if not self.index:
            self.index = {state.assign: i for i, state in enumerate(self.states)}

    @property
    def size(self) -> int:
        return len(self.states)

    def self_loops(self, state: int) -> int:
        return sum(1 for target in self.adjacency[state] if target == state)

    def neighbors(self, state: int) -> Set[int]:
        return {target for target in self.adjacency[state] if target != state}

    def boundary(self, subset: FrozenSet[int]) -> int:
        """Number of proposal edges leaving ``subset``, counted from inside."""
        return sum(
            1 for state in subset for target in self.adjacency[state] if target not in subset
        )

    def lookup(self, partition: Partition) -> int:
        key = partition.assign if self.ordered else partition.canonical().assign
        return self.index[key]


@dataclass
class ConductanceResult:
    """
        Outcome of a conductance search.

        Attributes:
            value: Smallest bottleneck ratio found
            subset: A state subset achieving it
            exact: False when the search was truncated and ``value`` is only
                an upper bound on the true conductance
            examined: Number of subsets evaluated
    """

    value: Fraction
    subset: FrozenSet[int]
    exact: bool
    examined: int = 0


@dataclass
class PurificationStructure:
    """
        Meta-graph with purifying transitions removed.

        Attributes:
            mixed_faces: M(P) per state
            directed: Per state, successor states after dropping purifying moves
            purifying: Directed moves that turn some mixed face pure
            reach: Per state, the states reachable from it in ``directed``
                (including itself)
    """

    mixed_faces: List[int]
    directed: List[Set[int]]
    purifying: Set[Tuple[int, int]]
    reach: List[FrozenSet[int]]

    def isolated_states(self) -> List[int]:
        """States whose reachable set is just themselves."""
        return [state for state, reach in enumerate(self.reach) if reach == frozenset({state})]

    def reach_of(self, state: int) -> Optional[FrozenSet[int]]:
        return self.reach[state] if 0 <= state < len(self.reach) else None
