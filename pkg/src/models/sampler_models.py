"""
    Data models for the exact and tree-based samplers.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple


@dataclass
class MarginalOracle:
    """
        Conditional inclusion probabilities of a distribution over subsets.

        ``query(i, chosen)`` is the probability that element ``i`` belongs to
        the random set given that, among the elements before ``i`` in
        ``universe``, exactly ``chosen`` were taken.

        Attributes:
            universe: Elements in decision order
            query: Exact conditional probability oracle
            name: Label for logs and records

        Example:
            >>> coin = MarginalOracle([0, 1], lambda i, chosen: Fraction(1, 2))
            >>> coin.query(1, frozenset())
            Fraction(1, 2)
    """

    universe: List[int]
    query: Callable[[int, FrozenSet[int]], Fraction]
    name: str = 'oracle'


class TreeKind(Enum):
    """Spanning tree source for tree partitions."""
    UST = 'ust'
    MST = 'mst'


class TreePartitionMode(Enum):
    """
        How a tree partition picks its edge.

            - REDRAW: uniform over the balanced edges of the tree, redraw the
              tree when it has none
            - REJECT: one uniform tree edge, redraw when it is unbalanced
    """
    REDRAW = 'redraw'
    REJECT = 'reject'


@dataclass
class SampleRecord:
    """
        One sampler output as written by the CLI.

        Attributes:
            index: Position in the batch
            kind: Sampler name
            edges: Edge set of the sample (cycle or cut)
            assign: Block assignment, for partition samplers
            attempts: Tree draws used, for tree partitions
    """

    index: int
    kind: str
    edges: Tuple[int, ...]
    assign: Optional[Tuple[int, ...]] = None
    attempts: int = 1
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'index': self.index, 'kind': self.kind, 'edges': list(self.edges)}
        if self.assign is not None:
            data['assign'] = list(self.assign)
        if self.attempts != 1:
            data['attempts'] = self.attempts
        data.update(self.extra)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_edges(cls, index: int, kind: str, edges: Sequence[int], **extra: Any) -> "SampleRecord":
        return cls(index, kind, tuple(sorted(edges)), extra=extra)
