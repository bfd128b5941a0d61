"""
    Data models for gadget constructions.

    A gadget replaces edges (or vertices) of a base graph by small subgraphs.
    Every construction returns a ``GadgetMap`` carrying explicit provenance:
    which derived edges came from which base edge and where the original
    nodes went. Projection, restriction and lift maps are computed from this
    provenance alone.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from .graph_models import MultiGraph, PlaneGraph


class GadgetKind(Enum):
    """
        Gadget families.

        Example:
            >>> GadgetKind.BIGONS.value
            'bigons'
    """
    BIGONS = 'bigons'
    DIPOLES = 'dipoles'
    DOUBLED_STAR = 'doubled_star'
    RD_VERTEX = 'rd_vertex'
    TD = 'td'
    MARGINAL = 'marginal'
    W_MARGINAL = 'w_marginal'


@dataclass
class GadgetMap:
    """
        Provenance of a derived graph built from a base graph.

        Attributes:
            kind: Gadget family that produced the map
            base_graph: Graph the gadget was applied to
            derived_graph: Result of the construction
            per_base_edge: Base edge id -> derived edge ids it expanded into
            original_nodes: Base node -> derived node
            params: Construction parameters (``d``, ``r`` ...)
            segments: Base edge id -> ordered segments, each a list of
                parallel derived edge ids (chains of bigons and dipoles)
            original_edges: Base edge id -> the single derived edge that
                represents it (vertex replacement)
            per_base_node: Base node -> derived nodes of its replacement gadget
            derived_plane: Embedding of the derived graph, when one is built
            base_plane: Embedding of the base graph, when one was used
            node_map: Base node -> derived node it was merged into (contractions)

        Raises:
            ValueError: If per-edge sets overlap or the node injection repeats
    """

    kind: GadgetKind
    base_graph: MultiGraph
    derived_graph: MultiGraph
    per_base_edge: Dict[int, FrozenSet[int]]
    original_nodes: Dict[int, int]
    params: Dict[str, int] = field(default_factory=dict)
    segments: Dict[int, List[List[int]]] = field(default_factory=dict)
    original_edges: Dict[int, int] = field(default_factory=dict)
    per_base_node: Dict[int, FrozenSet[int]] = field(default_factory=dict)
    derived_plane: Optional[PlaneGraph] = None
    base_plane: Optional[PlaneGraph] = None
    node_map: Optional[Dict[int, int]] = None

    def __post_init__(self) -> None:
        seen: Dict[int, int] = {}
        for base_edge, derived in self.per_base_edge.items():
            for edge_id in derived:
                if edge_id in seen:
                    raise ValueError(
                        f"derived edge {edge_id} claimed by base edges {seen[edge_id]} and {base_edge}"
                    )
                seen[edge_id] = base_edge
        targets = list(self.original_nodes.values())
        if len(set(targets)) != len(targets):
            raise ValueError("original node injection is not injective")

    @property
    def d(self) -> int:
        return self.params.get('d', 0)

    def derived_to_base_edge(self) -> Dict[int, int]:
        """Derived edge id -> owning base edge id, for edges with a base owner."""
        owner: Dict[int, int] = {}
        for base_edge, derived in self.per_base_edge.items():
            for edge_id in derived:
                owner[edge_id] = base_edge
        return owner

    def derived_to_base_node(self) -> Dict[int, int]:
        return {derived: base for base, derived in self.original_nodes.items()}

    def sidecar(self) -> Dict[str, object]:
        """
            Serializable provenance record written next to an exported derived graph.

            Example:
                >>> m.sidecar()['per_base_edge']['0']
                [0, 1]
        """
        return {
            'kind': self.kind.value,
            'params': dict(self.params),
            'per_base_edge': {str(e): sorted(ids) for e, ids in sorted(self.per_base_edge.items())},
            'original_nodes': {str(v): w for v, w in sorted(self.original_nodes.items())},
            'segments': {str(e): segs for e, segs in sorted(self.segments.items())},
            'original_edges': {str(e): w for e, w in sorted(self.original_edges.items())},
            'per_base_node': {str(v): sorted(ids) for v, ids in sorted(self.per_base_node.items())},
        }


@dataclass
class RdGadget:
    """
        The recursive triangle gadget R_d.

        Attributes:
            d: Level
            plane: Embedded gadget graph
            terminals: Outer triangle ``(a0, b0, c0)``
            level_cycles: Triangle ``(a_i, b_i, c_i)`` for every level ``i = 0 .. d``
    """

    d: int
    plane: PlaneGraph
    terminals: Tuple[int, int, int]
    level_cycles: List[Tuple[int, int, int]]
    coords: Dict[int, Tuple[float, float]] = field(default_factory=dict)

    @property
    def graph(self) -> MultiGraph:
        return self.plane.graph


@dataclass
class LiftResult:
    """A canonical lift of a base edge set together with the size of its fiber."""

    edges: FrozenSet[int]
    count: int
