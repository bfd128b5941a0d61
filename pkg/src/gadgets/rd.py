"""
    The recursive triangle gadget R_d and the constructions built on it.

    ``R_0`` is a triangle. Level ``i + 1`` subdivides the edges of the
    innermost triangle ``C_i``, places a smaller triangle ``C_{i+1}`` inside
    (turned half a revolution) and joins each subdivision node to the facing
    corner of the new triangle. Replacing every vertex of a cubic plane graph
    by a copy of ``R_d`` concentrates the cycle measure on long cycles;
    dualizing that construction over a triangulation gives ``T_d``.

    Node numbering of ``R_d``: terminals ``a0, b0, c0`` are ``0, 1, 2``. Level
    ``i`` appends ``a'_i, b'_i, c'_i`` (the subdivision nodes opposite
    ``a_i, b_i, c_i``) and then ``a_{i+1}, b_{i+1}, c_{i+1}``.
"""

import logging
import math
from itertools import combinations
from typing import Dict, Iterable, List, Set, Tuple

from ..errors import GraphStructureError, InadmissibleStateError
from ..graphs.core import delete_edges, is_connected_partition
from ..graphs.plane import euler_check, is_triangulation, plane_dual, plane_from_layout
from ..models.gadget_models import GadgetKind, GadgetMap, RdGadget
from ..models.graph_models import EdgeSet, Layout, MultiGraph, Partition, PlaneGraph
from ..oracle.enumeration import enum_simple_paths

logger = logging.getLogger(__name__)

CORNER_ANGLES = (90.0, 210.0, 330.0)


def _corner(radius: float, angle: float) -> Tuple[float, float]:
    theta = math.radians(angle)
    return radius * math.cos(theta), radius * math.sin(theta)


def build_rd(d: int) -> RdGadget:
    """
        Build ``R_d`` with its straight-line embedding.

        Args:
            d: Level, at least 0

        Returns:
            RdGadget with ``3 + 6d`` nodes and ``3 + 9d`` edges

        Example:
            >>> rd = build_rd(1)
            >>> rd.graph.node_count, rd.graph.number_of_edges
            (9, 12)
    """
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    coords: Dict[int, Tuple[float, float]] = {
        node: _corner(1.0, angle) for node, angle in enumerate(CORNER_ANGLES)
    }
    pairs: List[Tuple[int, int]] = [(0, 1), (1, 2), (2, 0)]
    # index of the current edge opposite each corner of the innermost triangle
    opposite = [1, 2, 0]
    triangle = (0, 1, 2)
    level_cycles = [triangle]
    radius = 1.0
    for level in range(d):
        base = 3 + 6 * level
        primes = (base, base + 1, base + 2)
        inner = (base + 3, base + 4, base + 5)
        radius /= 4
        turn = 180.0 * ((level + 1) % 2)
        for corner in range(3):
            x, y = pairs[opposite[corner]]
            coords[primes[corner]] = ((coords[x][0] + coords[y][0]) / 2, (coords[x][1] + coords[y][1]) / 2)
            pairs[opposite[corner]] = (x, primes[corner])
            pairs.append((primes[corner], y))
            coords[inner[corner]] = _corner(radius, CORNER_ANGLES[corner] + turn)
        opposite = []
        for corner in range(3):
            opposite.append(len(pairs))
            pairs.append((inner[(corner + 1) % 3], inner[(corner + 2) % 3]))
        for corner in range(3):
            pairs.append((primes[corner], inner[corner]))
        triangle = inner
        level_cycles.append(triangle)

    graph = MultiGraph.from_pairs(3 + 6 * d, pairs)
    plane = plane_from_layout(graph, Layout(coords))
    logger.debug(f"R_{d}: {graph.node_count} nodes, {graph.number_of_edges} edges")
    return RdGadget(d=d, plane=plane, terminals=(0, 1, 2), level_cycles=level_cycles, coords=coords)


def rd_symmetry(rd: RdGadget) -> List[int]:
    """
        The automorphism of ``R_d`` sending ``a -> b -> c -> a`` on every level.

        Returns:
            Node -> image node
    """
    return [node - node % 3 + (node % 3 + 1) % 3 for node in range(rd.graph.node_count)]


def sc_count_rd(d: int) -> int:
    """
        Closed form ``|SC(R_d)| = (3 * 5^(d+1) - 8d - 11) / 4``.

        Example:
            >>> [sc_count_rd(d) for d in range(4)]
            [1, 14, 87, 460]
    """
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    return (3 * 5 ** (d + 1) - 8 * d - 11) // 4


def sbl_count_rd(d: int) -> int:
    """
        Closed form for the simple paths from ``a0`` to ``b0``: ``(5^(d+1) - 1) / 2``.

        Example:
            >>> [sbl_count_rd(d) for d in range(4)]
            [2, 12, 62, 312]
    """
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    return (5 ** (d + 1) - 1) // 2


def rd_path_counts(d: int) -> Tuple[int, int]:
    """
        Path-extension counts ``(S_d, D_d)``.

        ``S_d`` counts simple paths joining two corners of ``C_d`` that avoid
        the edges of ``C_d``; ``D_d`` counts pairs of disjoint paths from ``a0``
        and ``b0`` that first touch ``C_d`` at their last node.
    """
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    return 3 * (5 ** d - 1) // 2, 5 ** d


def sc_count_rd_recursive(d: int) -> int:
    """``SC_d = SC_{d-1} + 1 + 2 S_d`` from ``SC_0 = 1``."""
    count = 1
    for level in range(1, d + 1):
        count += 1 + 2 * rd_path_counts(level)[0]
    return count


def sbl_count_rd_recursive(d: int) -> int:
    """``BL_d = BL_{d-1} + 2 D_d`` from ``BL_0 = 2``."""
    count = 2
    for level in range(1, d + 1):
        count += 2 * rd_path_counts(level)[1]
    return count


def level_path_count(rd: RdGadget, max_edges: int = -1) -> int:
    """Enumerated ``S_d``: paths between corners of ``C_d`` with the edges of ``C_d`` removed."""
    corners = rd.level_cycles[-1]
    on_triangle = {
        edge.id for edge in rd.graph.edges if edge.u in corners and edge.v in corners
    }
    remaining, _ = delete_edges(rd.graph, on_triangle)
    return sum(
        len(enum_simple_paths(remaining, s, t, max_edges=max_edges)) for s, t in combinations(corners, 2)
    )


def _first_touch_paths(g: MultiGraph, source: int, stop: Set[int]) -> List[Tuple[int, ...]]:
    if source in stop:
        return [(source,)]
    neighbors = g.neighbor_lists
    found: List[Tuple[int, ...]] = []
    path = [source]
    on_path = {source}

    def extend(node: int) -> None:
        for other in neighbors[node]:
            if other in on_path:
                continue
            if other in stop:
                found.append(tuple(path) + (other,))
                continue
            on_path.add(other)
            path.append(other)
            extend(other)
            path.pop()
            on_path.discard(other)

    extend(source)
    return found


def disjoint_approach_count(rd: RdGadget) -> int:
    """Enumerated ``D_d``: node-disjoint pairs of first-touch paths from ``a0`` and ``b0`` to ``C_d``."""
    stop = set(rd.level_cycles[-1])
    a0, b0, _ = rd.terminals
    from_a = _first_touch_paths(rd.graph, a0, stop)
    from_b = _first_touch_paths(rd.graph, b0, stop)
    return sum(1 for p in from_a for q in from_b if set(p).isdisjoint(q))


def vertex_replace_rd(plane: PlaneGraph, d: int) -> GadgetMap:
    """
        Replace every vertex of a cubic plane graph by a copy of ``R_d``.

        The darts at a vertex, in rotation order, attach to the terminals
        ``a0, b0, c0`` of its copy. Every base edge survives as one original
        edge joining two terminals; it keeps its orientation, so base dart
        ``2e + s`` corresponds to derived dart ``2 * original_edges[e] + s``.

        Args:
            plane: Embedded cubic multigraph
            d: Gadget level

        Raises:
            GraphStructureError: If a node does not have exactly three darts

        Example:
            >>> m = vertex_replace_rd(k4, 0)
            >>> m.derived_graph.node_count
            12
    """
    g = plane.graph
    for node in g.nodes():
        if len(plane.rotation.get(node, ())) != 3:
            raise GraphStructureError(f"node {node} has degree {g.degree(node)}; R_d replacement needs a cubic graph")
    rd = build_rd(d)
    gadget = rd.plane
    node_span, edge_span = rd.graph.node_count, rd.graph.number_of_edges

    def shifted(copy: int, dart: int) -> int:
        return 2 * (copy * edge_span + dart // 2) + dart % 2

    pairs: List[Tuple[int, int]] = []
    for copy in g.nodes():
        offset = copy * node_span
        pairs.extend((edge.u + offset, edge.v + offset) for edge in rd.graph.edges)
    terminal_of: Dict[int, int] = {}
    for copy in g.nodes():
        for dart, terminal in zip(plane.rotation[copy], rd.terminals):
            terminal_of[dart] = terminal
    original_edges: Dict[int, int] = {}
    for edge in g.edges:
        original_edges[edge.id] = len(pairs)
        pairs.append((
            edge.u * node_span + terminal_of[2 * edge.id],
            edge.v * node_span + terminal_of[2 * edge.id + 1],
        ))
    derived = MultiGraph.from_pairs(g.node_count * node_span, pairs)

    # the external dart goes into the corner of the gadget's outer face
    outer_corner: Dict[int, int] = {}
    for terminal in rd.terminals:
        for dart in gadget.rotation[terminal]:
            if gadget.dart_face[gadget.sigma(dart)] == gadget.outer_face:
                outer_corner[terminal] = dart
                break
    rotation: Dict[int, Tuple[int, ...]] = {}
    for copy in g.nodes():
        external = {
            terminal_of[dart]: 2 * original_edges[dart // 2] + dart % 2 for dart in plane.rotation[copy]
        }
        for node in rd.graph.nodes():
            darts: List[int] = []
            for dart in gadget.rotation[node]:
                darts.append(shifted(copy, dart))
                if node in external and dart == outer_corner[node]:
                    darts.append(external[node])
            rotation[copy * node_span + node] = tuple(darts)
    derived_plane = PlaneGraph(derived, rotation)
    euler_check(derived_plane)
    logger.debug(
        f"R_{d}(G): {derived.node_count} nodes, {derived.number_of_edges} edges, "
        f"{derived_plane.face_count} faces"
    )
    return GadgetMap(
        kind=GadgetKind.RD_VERTEX,
        base_graph=g,
        derived_graph=derived,
        per_base_edge={e: frozenset({derived_edge}) for e, derived_edge in original_edges.items()},
        original_nodes={},
        params={'d': d},
        original_edges=original_edges,
        per_base_node={
            copy: frozenset(range(copy * node_span, (copy + 1) * node_span)) for copy in g.nodes()
        },
        derived_plane=derived_plane,
        base_plane=plane,
    )


def pi_rd(m: GadgetMap, c: Iterable[int]) -> EdgeSet:
    """
        Keep the original edges of a derived edge set, as base edges.

        A simple cycle inside one gadget copy maps to the empty set; any other
        simple cycle maps to a simple cycle of the base.
    """
    members = set(c)
    return frozenset(e for e, derived_edge in m.original_edges.items() if derived_edge in members)


def build_td(plane: PlaneGraph, d: int) -> GadgetMap:
    """
        ``T_d`` of a plane triangulation: the dual of ``R_d`` applied to the dual.

        Each base vertex becomes the derived node for the face of ``R_d(G*)``
        that wraps around it. Base edge ``e`` keeps a single derived edge, the
        dual of the original edge over ``e``.

        Raises:
            GraphStructureError: If the input is not a simple triangulation

        Example:
            >>> m = build_td(k4, 1)
            >>> max(m.derived_graph.degree(v) for v in m.original_nodes.values())
            9
    """
    if not is_triangulation(plane):
        raise GraphStructureError("T_d needs a plane triangulation")
    dual, _ = plane_dual(plane)
    replaced = vertex_replace_rd(dual, d)
    hosted = replaced.derived_plane
    derived, _ = plane_dual(hosted)
    original_nodes: Dict[int, int] = {}
    for node in plane.graph.nodes():
        dart = plane.rotation[node][0]
        original_nodes[node] = hosted.dart_face[2 * replaced.original_edges[dart // 2] + dart % 2]
    logger.debug(f"T_{d}: {derived.graph.node_count} nodes, {derived.graph.number_of_edges} edges")
    return GadgetMap(
        kind=GadgetKind.TD,
        base_graph=plane.graph,
        derived_graph=derived.graph,
        per_base_edge=dict(replaced.per_base_edge),
        original_nodes=original_nodes,
        params={'d': d},
        original_edges=dict(replaced.original_edges),
        derived_plane=derived,
        base_plane=plane,
    )


def restrict_td(m: GadgetMap, p: Partition) -> Partition:
    """
        ``F_d``: read a connected partition of ``T_d`` on the original vertices.

        Raises:
            InadmissibleStateError: If ``p`` is not a connected partition of the
                derived graph
    """
    if not is_connected_partition(m.derived_graph, p):
        raise InadmissibleStateError("restriction needs a connected partition of the derived graph")
    assign = tuple(p.assign[m.original_nodes[v]] for v in range(m.base_graph.node_count))
    return Partition(p.k, assign, allow_empty=True)


def mixed_faces(plane: PlaneGraph, p: Partition) -> int:
    """
        Number of faces whose boundary meets more than one block.

        Example:
            >>> mixed_faces(k4, Partition(2, (0, 0, 0, 0), allow_empty=True))
            0
    """
    return sum(
        1 for nodes in plane.iter_face_node_sets() if len({p.assign[node] for node in nodes}) > 1
    )


def pure_faces(plane: PlaneGraph, p: Partition) -> int:
    return plane.face_count - mixed_faces(plane, p)

