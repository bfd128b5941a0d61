"""
    Data models for the series-parallel dynamic programs.

    Defines the SP decomposition tree, the exact polynomials carried by the
    cycle generating functions, the ``(weight, nonempty)`` monoid used by the
    balanced-partition tables and the table container itself.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Hashable, Iterator, List, Optional, Tuple, Union


class SPKind(Enum):
    """Node labels of an SP decomposition tree."""
    LEAF = 'leaf'
    SERIES = 'series'
    PARALLEL = 'parallel'


@dataclass
class SPTree:
    """
        Binary series-parallel decomposition with terminals.

        A leaf is a single base edge from ``source`` to ``sink``. A series node
        glues the first child's sink to the second child's source; a parallel
        node identifies both sources and both sinks.

        Attributes:
            kind: Leaf, series or parallel
            source: Source terminal (node of the base graph)
            sink: Sink terminal
            edge: Base edge id for leaves
            children: Ordered pair of subtrees for internal nodes

        Example:
            >>> leaf = SPTree(SPKind.LEAF, 0, 1, edge=0)
            >>> leaf.edge_ids()
            [0]
    """

    kind: SPKind
    source: int
    sink: int
    edge: Optional[int] = None
    children: Tuple["SPTree", ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.kind is SPKind.LEAF and self.edge is None:
            raise ValueError("leaf without an edge id")
        if self.kind is not SPKind.LEAF and len(self.children) != 2:
            raise ValueError(f"{self.kind.value} node needs exactly two children")

    def reversed(self) -> "SPTree":
        """Same graph with source and sink exchanged."""
        if self.kind is SPKind.LEAF:
            return SPTree(SPKind.LEAF, self.sink, self.source, edge=self.edge)
        first, second = self.children
        if self.kind is SPKind.SERIES:
            return SPTree(SPKind.SERIES, self.sink, self.source, children=(second.reversed(), first.reversed()))
        return SPTree(SPKind.PARALLEL, self.sink, self.source, children=(first.reversed(), second.reversed()))

    def iter_postorder(self) -> Iterator["SPTree"]:
        """Children before parents, without recursion."""
        stack: List[Tuple["SPTree", bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded or node.kind is SPKind.LEAF:
                yield node
                continue
            stack.append((node, True))
            for child in reversed(node.children):
                stack.append((child, False))

    def edge_ids(self) -> List[int]:
        return [node.edge for node in self.iter_postorder() if node.edge is not None]

    def node_ids(self) -> List[int]:
        nodes = {self.source, self.sink}
        for node in self.iter_postorder():
            nodes.add(node.source)
            nodes.add(node.sink)
        return sorted(nodes)


@dataclass(frozen=True, order=True)
class MonoidWeight:
    """
        Element of the monoid of natural numbers tagged with emptiness.

        Addition sums the weights; ``nonempty`` is absorbing. The zero is
        ``(0, False)``.

        Example:
            >>> MonoidWeight(1, True) + MonoidWeight(2, False)
            MonoidWeight(n=3, nonempty=True)
    """

    n: int
    nonempty: bool

    def __add__(self, other: "MonoidWeight") -> "MonoidWeight":
        return MonoidWeight(self.n + other.n, self.nonempty or other.nonempty)

    def is_zero(self) -> bool:
        return self.n == 0 and not self.nonempty


ZERO = MonoidWeight(0, False)

WeightTriple = Tuple[MonoidWeight, MonoidWeight, MonoidWeight]


class Junction(Enum):
    """
        How the two terminals of a subgraph sit in a partition restricted to it.

        ``JOINED``: same block, connected inside the subgraph. ``SPLIT``: same
        block, two components that only meet outside. ``CROSS``: different
        blocks.
    """
    JOINED = 'joined'
    SPLIT = 'split'
    CROSS = 'cross'


SplitKey = Tuple[Junction, MonoidWeight, MonoidWeight, MonoidWeight]


@dataclass
class CountTable:
    """Sparse map from a hashable key to an exact count."""

    entries: Dict[Hashable, int] = field(default_factory=dict)

    def add(self, key: Hashable, count: int) -> None:
        if count:
            self.entries[key] = self.entries.get(key, 0) + count

    def get(self, key: Hashable) -> int:
        return self.entries.get(key, 0)

    def items(self) -> Iterator[Tuple[Hashable, int]]:
        return iter(self.entries.items())

    def total_mass(self) -> int:
        return sum(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class DPTableX(CountTable):
    """
        Sparse table of connected three-way vertex splits of a two-terminal graph.

        Key ``(a1, a2, a3)``: the monoid weight of the block holding the
        source, of the block holding neither terminal and of the block holding
        the sink (``a3`` is zero when source and sink share a block). The value
        counts partitions with those weights.
    """


@dataclass
class SplitTable(CountTable):
    """
        Restrictions of connected three-way splits to a subgraph of the SP tree.

        Key ``(junction, source_part, floating, sink_part)``: how the terminals
        meet, the weight of the source's block inside the subgraph, the weight
        of a block lying wholly in the interior (zero if none) and, for
        ``CROSS``, the weight of the sink's block inside the subgraph.
    """


Coefficient = Union[int, Fraction]


@dataclass(frozen=True)
class UniPoly:
    """
        Univariate polynomial in ``x`` with exact integer or rational coefficients.

        Coefficients are stored lowest degree first with trailing zeros
        trimmed, so equal polynomials compare equal. Integers and Fractions
        mix freely with polynomials under ``+`` and ``*``.

        Example:
            >>> p = UniPoly.x() + 2
            >>> (p * p).coeffs
            (4, 4, 1)
    """

    coeffs: Tuple[Coefficient, ...] = ()

    def __post_init__(self) -> None:
        terms = list(self.coeffs)
        while terms and terms[-1] == 0:
            terms.pop()
        object.__setattr__(self, 'coeffs', tuple(terms))

    @classmethod
    def constant(cls, value: Coefficient) -> "UniPoly":
        return cls((value,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def coerce(cls, value: Union["UniPoly", Coefficient]) -> "UniPoly":
        if isinstance(value, UniPoly):
            return value
        return cls.constant(value)

    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Coefficient:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def evaluate(self, at: Coefficient) -> Coefficient:
        result: Coefficient = 0
        for c in reversed(self.coeffs):
            result = result * at + c
        return result

    def __add__(self, other: Union["UniPoly", Coefficient]) -> "UniPoly":
        other = UniPoly.coerce(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    __radd__ = __add__

    def __mul__(self, other: Union["UniPoly", Coefficient]) -> "UniPoly":
        other = UniPoly.coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        terms: List[Coefficient] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                terms[i + j] += a * b
        return UniPoly(tuple(terms))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = UniPoly.constant(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if k == 0 else f"{c}*x" if k == 1 else f"{c}*x^{k}")
        return " + ".join(reversed(terms))
