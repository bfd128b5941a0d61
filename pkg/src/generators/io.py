"""
    JSON graph files and gadget provenance sidecars.

    Graph file schema::

        {
          "nodes": 4,
          "edges": [[0, 0, 1], [1, 1, 2], ...],       # [id, u, v]
          "weights": {"0": 2, ...},                   # optional
          "rotation": {"0": [0, 7], ...},             # optional, darts ccw
          "outer_face": 1,                            # optional
          "layout": {"0": [0.0, 0.0], ...}            # optional
        }

    Dart ``2 * id`` sits at ``u`` and ``2 * id + 1`` at ``v``. Files are
    written in a canonical form (sorted keys, fixed indentation) so that an
    ingest/export round trip is byte-identical.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..errors import EmbeddingError, SchemaError
from ..models.gadget_models import GadgetKind, GadgetMap
from ..models.graph_models import Edge, Layout, MultiGraph, PlaneGraph
from . import lattices

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass
class GraphDocument:
    """
        Parsed graph file.

        Attributes:
            graph: The multigraph (node weights included)
            layout: Coordinates, when present
            plane: Embedding, when a rotation system is present
    """

    graph: MultiGraph
    layout: Optional[Layout] = None
    plane: Optional[PlaneGraph] = None

    def require_plane(self) -> PlaneGraph:
        if self.plane is None:
            raise EmbeddingError("graph file has no rotation system; plane operations unavailable")
        return self.plane


def _int(value: Any, location: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, str) and value.lstrip('-').isdigit():
            return int(value)
        raise SchemaError(location, f"expected an integer, got {value!r}")
    return value


def graph_from_dict(data: Dict[str, Any]) -> GraphDocument:
    """
        Validate and decode a graph document.

        Raises:
            SchemaError: Naming the first offending element
    """
    if not isinstance(data, dict):
        raise SchemaError('$', 'graph document must be an object')
    if 'nodes' not in data:
        raise SchemaError('nodes', 'required field missing')
    node_count = _int(data['nodes'], 'nodes')
    if node_count < 0:
        raise SchemaError('nodes', 'must be nonnegative')
    raw_edges = data.get('edges', [])
    if not isinstance(raw_edges, list):
        raise SchemaError('edges', 'must be a list')
    edges: List[Edge] = []
    for position, raw in enumerate(raw_edges):
        location = f"edges[{position}]"
        if not isinstance(raw, list) or len(raw) != 3:
            raise SchemaError(location, 'expected [id, u, v]')
        edge_id, u, v = (_int(item, location) for item in raw)
        if edge_id != position:
            raise SchemaError(location, f"edge ids must be dense and ordered, got {edge_id}")
        for end in (u, v):
            if not 0 <= end < node_count:
                raise SchemaError(location, f"endpoint {end} outside [0, {node_count})")
        edges.append(Edge(edge_id, u, v))

    weights: Optional[Dict[int, int]] = None
    if data.get('weights') is not None:
        if not isinstance(data['weights'], dict):
            raise SchemaError('weights', 'must be an object')
        weights = {}
        for key, value in data['weights'].items():
            node = _int(key, f"weights.{key}")
            if not 0 <= node < node_count:
                raise SchemaError(f"weights.{key}", 'unknown node')
            weight = _int(value, f"weights.{key}")
            if weight < 0:
                raise SchemaError(f"weights.{key}", 'weights must be nonnegative')
            weights[node] = weight
    graph = MultiGraph(node_count, edges, weights)

    layout = None
    if data.get('layout') is not None:
        coords = {}
        for key, value in data['layout'].items():
            if not isinstance(value, list) or len(value) != 2:
                raise SchemaError(f"layout.{key}", 'expected [x, y]')
            coords[_int(key, f"layout.{key}")] = (float(value[0]), float(value[1]))
        layout = Layout(coords)

    plane = None
    if data.get('rotation') is not None:
        rotation = {}
        for key, darts in data['rotation'].items():
            if not isinstance(darts, list):
                raise SchemaError(f"rotation.{key}", 'expected a list of darts')
            rotation[_int(key, f"rotation.{key}")] = tuple(
                _int(dart, f"rotation.{key}") for dart in darts
            )
        outer = data.get('outer_face')
        try:
            plane = PlaneGraph(graph, rotation, _int(outer, 'outer_face') if outer is not None else None)
        except EmbeddingError as e:
            raise SchemaError('rotation', str(e))
    return GraphDocument(graph, layout, plane)


def graph_to_dict(
    graph: MultiGraph, layout: Optional[Layout] = None, plane: Optional[PlaneGraph] = None
) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        'nodes': graph.node_count,
        'edges': [[e.id, e.u, e.v] for e in graph.edges],
    }
    if graph.node_weight is not None:
        data['weights'] = {str(node): w for node, w in sorted(graph.node_weight.items())}
    if plane is not None:
        data['rotation'] = {str(node): list(darts) for node, darts in sorted(plane.rotation.items())}
        if plane.outer_face is not None:
            data['outer_face'] = plane.outer_face
    if layout is not None:
        data['layout'] = {str(node): [x, y] for node, (x, y) in sorted(layout.coords.items())}
    return data


def canonical_json(data: Dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + '\n'


def ingest(path: PathLike) -> GraphDocument:
    """
        Read a graph file.

        Raises:
            SchemaError: On malformed JSON or schema violations
    """
    path = Path(path)
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path.name}:{e.lineno}", e.msg)
    document = graph_from_dict(data)
    logger.info(
        f"Loaded {path.name}: {document.graph.node_count} nodes, "
        f"{document.graph.number_of_edges} edges"
        + ('' if document.plane else ' (no rotation system)')
    )
    return document


def export(
    graph: MultiGraph,
    path: PathLike,
    layout: Optional[Layout] = None,
    plane: Optional[PlaneGraph] = None,
) -> Path:
    """Write a graph file in canonical form."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        f.write(canonical_json(graph_to_dict(graph, layout, plane)))
    return path


def export_document(document: GraphDocument, path: PathLike) -> Path:
    return export(document.graph, path, document.layout, document.plane)


def sidecar_path(path: PathLike) -> Path:
    path = Path(path)
    return path.with_name(path.stem + '.gadget.json')


def export_gadget(m: GadgetMap, path: PathLike) -> Tuple[Path, Path]:
    """
        Write a derived graph plus its provenance sidecar (and the base graph inline).

        Returns:
            Paths of the graph file and of the sidecar
    """
    graph_path = export(m.derived_graph, path, plane=m.derived_plane)
    record = m.sidecar()
    record['base'] = graph_to_dict(m.base_graph, plane=m.base_plane)
    side = sidecar_path(graph_path)
    with open(side, 'w') as f:
        f.write(canonical_json(record))
    return graph_path, side


def load_gadget(path: PathLike) -> GadgetMap:
    """Reload a derived graph exported by ``export_gadget`` into a ``GadgetMap``."""
    derived = ingest(path)
    side = sidecar_path(path)
    try:
        with open(side, 'r') as f:
            record = json.load(f)
    except FileNotFoundError:
        raise SchemaError(side.name, 'gadget sidecar missing')
    base = graph_from_dict(record.get('base', {}))
    try:
        kind = GadgetKind(record['kind'])
    except (KeyError, ValueError):
        raise SchemaError('kind', f"unknown gadget kind {record.get('kind')!r}")

    def int_keys(section: str) -> Dict[int, Any]:
        return {int(key): value for key, value in record.get(section, {}).items()}

    return GadgetMap(
        kind=kind,
        base_graph=base.graph,
        derived_graph=derived.graph,
        per_base_edge={e: frozenset(ids) for e, ids in int_keys('per_base_edge').items()},
        original_nodes={v: int(w) for v, w in int_keys('original_nodes').items()},
        params={key: int(value) for key, value in record.get('params', {}).items()},
        segments={e: [list(seg) for seg in segs] for e, segs in int_keys('segments').items()},
        original_edges={e: int(w) for e, w in int_keys('original_edges').items()},
        per_base_node={v: frozenset(ids) for v, ids in int_keys('per_base_node').items()},
        derived_plane=derived.plane,
        base_plane=base.plane,
    )


def build_graph(spec: Dict[str, Any]) -> GraphDocument:
    """
        Build a graph from an experiment graph spec.

        Args:
            spec: ``{"file": path}`` or ``{"family": name, ...}`` where the
                family is one of ``grid`` (``n``, ``m``), ``shaved_grid``,
                ``gate`` (``w``, ``strict_zero``), ``franken``, ``triangular``,
                ``cycle`` (all ``n``), ``k4`` or ``theta`` (``lengths``)

        Raises:
            SchemaError: On an unknown family or a missing parameter

        Example:
            >>> build_graph({'family': 'grid', 'n': 3}).graph.node_count
            9
    """
    if 'file' in spec:
        return ingest(spec['file'])
    family = spec.get('family')
    try:
        if family == 'grid':
            plane, layout = lattices.grid(int(spec['n']), int(spec.get('m', spec['n'])))
        elif family == 'shaved_grid':
            plane, layout = lattices.shaved_grid(int(spec['n']))
        elif family == 'gate':
            plane, layout = lattices.gate_graph(float(spec['w']), bool(spec.get('strict_zero', False)))
        elif family == 'franken':
            plane, layout = lattices.franken_graph(int(spec['n']))
        elif family == 'triangular':
            plane, layout = lattices.triangular_patch(int(spec['n']))
        elif family == 'cycle':
            plane, layout = lattices.cycle_graph(int(spec['n']))
        elif family == 'k4':
            plane, layout = lattices.k4_plane()
        elif family == 'theta':
            return GraphDocument(lattices.theta_graph(tuple(spec.get('lengths', (1, 2, 2)))))
        else:
            raise SchemaError('graph.family', f"unknown graph family {family!r}")
    except KeyError as e:
        raise SchemaError(f'graph.{e.args[0]}', f"required by family '{family}'")
    return GraphDocument(plane.graph, layout, plane)
