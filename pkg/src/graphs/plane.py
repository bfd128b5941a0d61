"""
    Plane embeddings: rotation systems from coordinates, face checks and duals.

    Darts follow the convention of ``PlaneGraph``: edge ``e = (u, v)`` owns
    dart ``2e`` at ``u`` and dart ``2e + 1`` at ``v``. With counterclockwise
    rotations, every face lies to the right of its boundary walk: bounded
    faces are traced clockwise and the outer face counterclockwise.
"""

import logging
import math
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from ..errors import EmbeddingError, GraphStructureError
from ..models.graph_models import Edge, Layout, MultiGraph, PlaneGraph
from .core import h0

logger = logging.getLogger(__name__)

Coords = Dict[int, Tuple[float, float]]


def rotation_from_layout(g: MultiGraph, coords: Coords) -> Dict[int, Tuple[int, ...]]:
    """
        Counterclockwise rotation system of a straight-line drawing.

        Args:
            g: Simple graph without self-loops
            coords: Node -> (x, y)

        Raises:
            EmbeddingError: On self-loops, missing coordinates or two darts
                leaving a node in the same direction
    """
    rotation: Dict[int, Tuple[int, ...]] = {}
    darts_at: Dict[int, List[Tuple[float, int]]] = {node: [] for node in range(g.node_count)}
    for edge in g.edges:
        if edge.u == edge.v:
            raise EmbeddingError(f"edge {edge.id} is a self-loop; straight-line drawings cannot hold it")
        for dart, tail, head in ((2 * edge.id, edge.u, edge.v), (2 * edge.id + 1, edge.v, edge.u)):
            if tail not in coords or head not in coords:
                raise EmbeddingError(f"missing coordinates for edge {edge.id}")
            (x0, y0), (x1, y1) = coords[tail], coords[head]
            darts_at[tail].append((math.atan2(y1 - y0, x1 - x0), dart))
    for node, darts in darts_at.items():
        darts.sort()
        for (a1, d1), (a2, d2) in zip(darts, darts[1:]):
            if math.isclose(a1, a2, abs_tol=1e-12):
                raise EmbeddingError(f"darts {d1} and {d2} overlap at node {node}")
        rotation[node] = tuple(dart for _, dart in darts)
    return rotation


def signed_area(points: Sequence[Tuple[float, float]]) -> float:
    """Shoelace area; positive for counterclockwise polygons."""
    total = 0.0
    for (x0, y0), (x1, y1) in zip(points, list(points[1:]) + list(points[:1])):
        total += x0 * y1 - x1 * y0
    return total / 2


def plane_from_layout(g: MultiGraph, layout: Layout) -> PlaneGraph:
    """
        Embed a straight-line drawing; the outer face is the one of largest signed area.

        Example:
            >>> c4 = MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
            >>> square = Layout({0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)})
            >>> plane_from_layout(c4, square).face_count
            2
    """
    plane = PlaneGraph(g, rotation_from_layout(g, layout.coords))
    if plane.face_count:
        areas = [
            signed_area([layout.coords[node] for node in plane.face_nodes(face)])
            for face in range(plane.face_count)
        ]
        plane.outer_face = max(range(plane.face_count), key=lambda f: (areas[f], -f))
    euler_check(plane)
    return plane


def components_with_edges(plane: PlaneGraph) -> int:
    graph = plane.graph.to_networkx()
    return sum(
        1 for members in nx.connected_components(graph) if graph.subgraph(members).number_of_edges()
    )


def plane_face_count(plane: PlaneGraph) -> int:
    """
        Faces of the drawing in the plane.

        Each component is traced separately, so its outer boundary appears
        once per component; all of them bound the same unbounded face.
    """
    return plane.face_count - components_with_edges(plane) + 1


def euler_check(plane: PlaneGraph) -> bool:
    """
        Verify ``V - E + F = 2`` on every component that has an edge.

        Returns:
            True (the global identity ``1 + h0 = V - E + F`` then holds with
            ``F = plane_face_count``)

        Raises:
            EmbeddingError: If some component is not embedded in the sphere
    """
    graph = plane.graph
    component_of: Dict[int, int] = {}
    nx_graph = graph.to_networkx()
    for index, members in enumerate(nx.connected_components(nx_graph)):
        for node in members:
            component_of[node] = index
    vertices: Dict[int, int] = {}
    edges: Dict[int, int] = {}
    faces: Dict[int, int] = {}
    for node in range(graph.node_count):
        vertices[component_of[node]] = vertices.get(component_of[node], 0) + 1
    for edge in graph.edges:
        edges[component_of[edge.u]] = edges.get(component_of[edge.u], 0) + 1
    for orbit in plane.faces:
        owner = component_of[plane.dart_tail(orbit[0])]
        faces[owner] = faces.get(owner, 0) + 1
    for component, edge_count in edges.items():
        characteristic = vertices[component] - edge_count + faces.get(component, 0)
        if characteristic != 2:
            raise EmbeddingError(
                f"component {component} has V - E + F = {characteristic}; rotation is not planar"
            )
    return True


def face_degrees(plane: PlaneGraph) -> List[int]:
    """Length of each face's boundary walk (a bridge counts twice)."""
    return [plane.face_degree(face) for face in range(plane.face_count)]


def is_triangulation(plane: PlaneGraph) -> bool:
    """Whether the graph is simple and every face is a triangle."""
    graph = plane.graph
    seen = set()
    for edge in graph.edges:
        key = (min(edge.u, edge.v), max(edge.u, edge.v))
        if edge.u == edge.v or key in seen:
            return False
        seen.add(key)
    return all(degree == 3 for degree in face_degrees(plane))


def plane_dual(plane: PlaneGraph) -> Tuple[PlaneGraph, Dict[int, int]]:
    """
        Plane dual with the edge bijection D.

        Dual node ``f`` is face ``f`` of the input; dual edge ``e`` joins the
        faces on either side of primal edge ``e``, so D is the identity on edge
        ids. The rotation at a dual node lists the face's darts in boundary
        order; taking the dual twice reproduces the input rotation.

        Returns:
            Tuple of (dual plane graph, edge bijection primal -> dual)

        Raises:
            GraphStructureError: If the input is disconnected

        Example:
            >>> dual, D = plane_dual(square_plane)
            >>> dual.graph.node_count, dual.graph.number_of_edges
            (2, 4)
    """
    graph = plane.graph
    if graph.node_count == 0 or h0(graph) != 1:
        raise GraphStructureError("plane dual requires a connected graph")
    edges = [
        Edge(edge.id, plane.dart_face[2 * edge.id], plane.dart_face[2 * edge.id + 1])
        for edge in graph.edges
    ]
    dual_graph = MultiGraph(plane.face_count, edges)
    rotation = {face: tuple(orbit) for face, orbit in enumerate(plane.faces)}
    dual = PlaneGraph(dual_graph, rotation)
    if plane.outer_face is not None and plane.faces:
        # the dual face around the tail of the outer boundary's first dart
        dual.outer_face = dual.dart_face[plane.faces[plane.outer_face][0]]
    logger.debug(f"Dual has {dual_graph.node_count} nodes and {dual.face_count} faces")
    return dual, {edge.id: edge.id for edge in graph.edges}
