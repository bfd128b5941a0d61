"""
    Data models for graphs, embeddings and partitions.

    This module defines the substrate every other package works on: an
    identified multigraph with optional node weights, a plane graph given by a
    rotation system, partitions of the node set, and the small value types
    used by the generators (layouts and party assignments).

    Darts: edge ``e = (u, v)`` owns two darts, ``2e`` sitting at ``u`` and
    ``2e + 1`` sitting at ``v``. A rotation system lists, for every node, the
    darts at that node in counterclockwise order.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
from typing_extensions import Self

from ..errors import EmbeddingError, GraphStructureError

EdgeSet = FrozenSet[int]


class Edge(NamedTuple):
    """One identified edge; ``u == v`` encodes a self-loop."""

    id: int
    u: int
    v: int


@dataclass
class MultiGraph:
    """
        Undirected multigraph with dense, stable edge ids.

        Attributes:
            node_count: Nodes are ``0 .. node_count - 1``
            edges: Edge list, ``edges[i].id == i``
            node_weight: Optional nonnegative integer weight per node;
                missing entries weigh 1

        Example:
            >>> g = MultiGraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
            >>> g.number_of_edges
            3
    """

    node_count: int
    edges: List[Edge]
    node_weight: Optional[Dict[int, int]] = None

    def __post_init__(self) -> None:
        if self.node_count < 0:
            raise GraphStructureError("node_count must be nonnegative")
        for position, edge in enumerate(self.edges):
            if edge.id != position:
                raise GraphStructureError(f"edge ids must be dense: found {edge.id} at {position}")
            for end in (edge.u, edge.v):
                if not 0 <= end < self.node_count:
                    raise GraphStructureError(f"edge {edge.id} endpoint {end} out of range")
        if self.node_weight is not None:
            for node, weight in self.node_weight.items():
                if not 0 <= node < self.node_count:
                    raise GraphStructureError(f"weight given for unknown node {node}")
                if weight < 0:
                    raise GraphStructureError(f"node {node} has negative weight {weight}")

    @classmethod
    def from_pairs(
        cls,
        node_count: int,
        pairs: Sequence[Tuple[int, int]],
        node_weight: Optional[Dict[int, int]] = None,
    ) -> Self:
        """Build a graph whose edge ids follow the order of ``pairs``."""
        return cls(
            node_count,
            [Edge(i, u, v) for i, (u, v) in enumerate(pairs)],
            dict(node_weight) if node_weight is not None else None,
        )

    @property
    def number_of_nodes(self) -> int:
        return self.node_count

    @property
    def number_of_edges(self) -> int:
        return len(self.edges)

    def nodes(self) -> range:
        return range(self.node_count)

    def endpoints(self, edge_id: int) -> Tuple[int, int]:
        edge = self.edges[edge_id]
        return edge.u, edge.v

    def other_end(self, edge_id: int, node: int) -> int:
        edge = self.edges[edge_id]
        return edge.v if edge.u == node else edge.u

    def is_self_loop(self, edge_id: int) -> bool:
        edge = self.edges[edge_id]
        return edge.u == edge.v

    @cached_property
    def adjacency(self) -> List[List[Tuple[int, int]]]:
        """Per node, ``(edge_id, neighbor)`` pairs; self-loops are omitted."""
        adjacency: List[List[Tuple[int, int]]] = [[] for _ in range(self.node_count)]
        for edge in self.edges:
            if edge.u == edge.v:
                continue
            adjacency[edge.u].append((edge.id, edge.v))
            adjacency[edge.v].append((edge.id, edge.u))
        return adjacency

    @cached_property
    def neighbor_lists(self) -> List[List[int]]:
        """Per node, neighbors with multiplicity (one entry per parallel edge)."""
        return [[other for _, other in pairs] for pairs in self.adjacency]

    def degree(self, node: int) -> int:
        """Degree counting a self-loop twice."""
        loops = sum(1 for edge in self.edges if edge.u == edge.v == node)
        return len(self.adjacency[node]) + 2 * loops

    def weight(self, node: int) -> int:
        if self.node_weight is None:
            return 1
        return self.node_weight.get(node, 1)

    def weights(self) -> List[int]:
        return [self.weight(v) for v in range(self.node_count)]

    def total_weight(self) -> int:
        return sum(self.weights())

    def with_weights(self, node_weight: Optional[Dict[int, int]]) -> "MultiGraph":
        return MultiGraph(self.node_count, list(self.edges), node_weight)

    def to_networkx(self, edge_ids: Optional[Sequence[int]] = None) -> nx.MultiGraph:
        """
            Convert to a networkx MultiGraph keyed by edge id.

            Args:
                edge_ids: Restrict to these edges (all nodes are kept)
        """
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.node_count))
        chosen = self.edges if edge_ids is None else [self.edges[i] for i in edge_ids]
        for edge in chosen:
            graph.add_edge(edge.u, edge.v, key=edge.id)
        return graph

    def simple_graph(self) -> nx.Graph:
        """Simple projection: parallel edges merged, self-loops dropped."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from((e.u, e.v) for e in self.edges if e.u != e.v)
        return graph


@dataclass(frozen=True)
class Partition:
    """
        Assignment of every node to one of ``k`` blocks.

        Connectedness is not part of the type; see
        ``src.graphs.core.is_connected_partition``.

        Attributes:
            k: Number of blocks
            assign: ``assign[v]`` is the block index of node ``v``
            allow_empty: Permit unused block indices

        Example:
            >>> Partition(2, (0, 0, 1, 1)).blocks()
            (frozenset({0, 1}), frozenset({2, 3}))
    """

    k: int
    assign: Tuple[int, ...]
    allow_empty: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("a partition needs at least one block")
        for node, block in enumerate(self.assign):
            if not 0 <= block < self.k:
                raise ValueError(f"node {node} assigned to block {block} outside [0, {self.k})")
        if not self.allow_empty and len(set(self.assign)) != self.k and self.assign:
            raise ValueError("empty block present; pass allow_empty=True to permit it")

    @classmethod
    def from_blocks(
        cls, blocks: Sequence[Sequence[int]], node_count: int, allow_empty: bool = False
    ) -> "Partition":
        assign = [-1] * node_count
        for index, block in enumerate(blocks):
            for node in block:
                if assign[node] != -1:
                    raise ValueError(f"node {node} appears in two blocks")
                assign[node] = index
        if -1 in assign:
            raise ValueError(f"node {assign.index(-1)} is unassigned")
        return cls(len(blocks), tuple(assign), allow_empty)

    @property
    def node_count(self) -> int:
        return len(self.assign)

    def blocks(self) -> Tuple[FrozenSet[int], ...]:
        members: List[List[int]] = [[] for _ in range(self.k)]
        for node, block in enumerate(self.assign):
            members[block].append(node)
        return tuple(frozenset(block) for block in members)

    def block_sizes(self) -> List[int]:
        sizes = [0] * self.k
        for block in self.assign:
            sizes[block] += 1
        return sizes

    def has_empty_block(self) -> bool:
        return any(size == 0 for size in self.block_sizes())

    def canonical(self) -> "Partition":
        """
            Unordered canonical form: blocks relabeled by increasing minimum node,
            empty blocks last.
        """
        relabel: Dict[int, int] = {}
        for block in self.assign:
            if block not in relabel:
                relabel[block] = len(relabel)
        return Partition(
            self.k,
            tuple(relabel[block] for block in self.assign),
            allow_empty=self.allow_empty or len(relabel) < self.k,
        )

    def same_unordered(self, other: "Partition") -> bool:
        return self.canonical().assign == other.canonical().assign and self.k == other.k


@dataclass
class PlaneGraph:
    """
        Multigraph plus a rotation system (combinatorial plane embedding).

        Faces are the orbits of ``d -> sigma(alpha(d))`` where ``alpha`` swaps
        the two darts of an edge and ``sigma`` is the rotation successor.

        Attributes:
            graph: Underlying multigraph
            rotation: Node -> darts in counterclockwise order
            outer_face: Face id treated as unbounded; defaults to the longest face

        Raises:
            EmbeddingError: If the rotation does not list every dart exactly once
                at its own node
    """

    graph: MultiGraph
    rotation: Dict[int, Tuple[int, ...]]
    outer_face: Optional[int] = None
    faces: List[Tuple[int, ...]] = field(init=False, repr=False)
    dart_face: List[int] = field(init=False, repr=False)
    _successor: List[int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        dart_count = 2 * self.graph.number_of_edges
        successor = [-1] * dart_count
        for node in range(self.graph.node_count):
            darts = tuple(self.rotation.get(node, ()))
            for dart in darts:
                if not 0 <= dart < dart_count:
                    raise EmbeddingError(f"rotation at node {node} lists unknown dart {dart}")
                if self.dart_tail(dart) != node:
                    raise EmbeddingError(f"dart {dart} does not sit at node {node}")
                if successor[dart] != -1:
                    raise EmbeddingError(f"dart {dart} listed twice")
            for position, dart in enumerate(darts):
                successor[dart] = darts[(position + 1) % len(darts)]
        if -1 in successor:
            raise EmbeddingError(f"dart {successor.index(-1)} missing from the rotation system")
        self._successor = successor
        self.faces, self.dart_face = self._trace_faces()
        if self.outer_face is None:
            self.outer_face = max(range(len(self.faces)), key=lambda f: (len(self.faces[f]), -f)) \
                if self.faces else None
        elif not 0 <= self.outer_face < len(self.faces):
            raise EmbeddingError(f"outer face {self.outer_face} does not exist")

    def dart_tail(self, dart: int) -> int:
        edge = self.graph.edges[dart // 2]
        return edge.u if dart % 2 == 0 else edge.v

    def dart_head(self, dart: int) -> int:
        return self.dart_tail(dart ^ 1)

    def sigma(self, dart: int) -> int:
        return self._successor[dart]

    def _trace_faces(self) -> Tuple[List[Tuple[int, ...]], List[int]]:
        dart_face = [-1] * len(self._successor)
        faces: List[Tuple[int, ...]] = []
        for start in range(len(self._successor)):
            if dart_face[start] != -1:
                continue
            orbit = []
            dart = start
            while dart_face[dart] == -1:
                dart_face[dart] = len(faces)
                orbit.append(dart)
                dart = self._successor[dart ^ 1]
            faces.append(tuple(orbit))
        return faces, dart_face

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def face_nodes(self, face: int) -> List[int]:
        """Boundary walk of a face as a node sequence (repeats possible)."""
        return [self.dart_tail(dart) for dart in self.faces[face]]

    def face_degree(self, face: int) -> int:
        return len(self.faces[face])

    def iter_face_node_sets(self) -> Iterator[FrozenSet[int]]:
        for face in range(len(self.faces)):
            yield frozenset(self.face_nodes(face))


@dataclass
class Layout:
    """
        Node coordinates used for rendering, starting plans and party overlays.

        Never consulted by the counting or sampling algorithms.
    """

    coords: Dict[int, Tuple[float, float]]

    def __post_init__(self) -> None:
        self.coords = {int(node): (float(x), float(y)) for node, (x, y) in self.coords.items()}

    def covers(self, node_count: int) -> bool:
        return all(node in self.coords for node in range(node_count))

    def xs(self) -> List[float]:
        return [self.coords[node][0] for node in sorted(self.coords)]

    def ys(self) -> List[float]:
        return [self.coords[node][1] for node in sorted(self.coords)]


@dataclass
class PartyAssignment:
    """Party label in ``{0, 1}`` for every node."""

    party: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(label not in (0, 1) for label in self.party):
            raise ValueError("party labels must be 0 or 1")

    def share(self) -> float:
        return sum(self.party) / len(self.party) if self.party else 0.0
