"""
    Graph families used by the experiments and the oracle batteries.

    Every constructor returns a plane graph together with the straight-line
    layout its rotation system was read from. Grid node ``(x, y)`` gets id
    ``y * width + x``.
"""

import logging
import math
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..errors import GraphStructureError
from ..graphs.core import bridges, delete_edges, is_connected
from ..graphs.plane import plane_from_layout
from ..models.graph_models import Layout, MultiGraph, PlaneGraph

logger = logging.getLogger(__name__)

GATE_SIZE = 36
GATE_ROWS = (12, 20)


def embed(
    node_count: int, pairs: Sequence[Tuple[int, int]], coords: Dict[int, Tuple[float, float]]
) -> Tuple[PlaneGraph, Layout]:
    """Build a plane graph from edges and a crossing-free straight-line drawing."""
    layout = Layout(coords)
    graph = MultiGraph.from_pairs(node_count, pairs)
    return plane_from_layout(graph, layout), layout


def grid_pairs(width: int, height: int) -> List[Tuple[int, int]]:
    pairs = []
    for y in range(height):
        for x in range(width - 1):
            pairs.append((y * width + x, y * width + x + 1))
    for y in range(height - 1):
        for x in range(width):
            pairs.append((y * width + x, (y + 1) * width + x))
    return pairs


def grid_coords(width: int, height: int) -> Dict[int, Tuple[float, float]]:
    return {y * width + x: (float(x), float(y)) for y in range(height) for x in range(width)}


def grid(n: int, m: int) -> Tuple[PlaneGraph, Layout]:
    """
        The ``n`` by ``m`` grid graph.

        Example:
            >>> plane, _ = grid(2, 2)
            >>> plane.graph.number_of_edges
            4
    """
    if n < 1 or m < 1:
        raise ValueError(f"grid dimensions must be positive, got {n}x{m}")
    return embed(n * m, grid_pairs(n, m), grid_coords(n, m))


def shaved_grid(n: int) -> Tuple[PlaneGraph, Layout]:
    """
        The ``n`` by ``n`` grid with its four corners shaved.

        Each corner node is deleted and its two neighbors are joined by a
        diagonal, so the dual is the ``n - 1`` grid plus one supernode with a
        single edge to every boundary face.

        Raises:
            ValueError: If ``n < 3``
    """
    if n < 3:
        raise ValueError(f"shaved_grid needs n >= 3, got {n}")
    corners = {0, n - 1, (n - 1) * n, n * n - 1}
    keep = [node for node in range(n * n) if node not in corners]
    new_id = {node: index for index, node in enumerate(keep)}
    pairs = [(new_id[u], new_id[v]) for u, v in grid_pairs(n, n) if u in new_id and v in new_id]
    last = n - 1
    for (a, b) in (
        ((1, 0), (0, 1)),
        ((last - 1, 0), (last, 1)),
        ((0, last - 1), (1, last)),
        ((last, last - 1), (last - 1, last)),
    ):
        pairs.append((new_id[a[1] * n + a[0]], new_id[b[1] * n + b[0]]))
    full = grid_coords(n, n)
    coords = {new_id[node]: full[node] for node in keep}
    return embed(len(keep), pairs, coords)


def in_gate(x: int, y: int, w: float) -> bool:
    """Whether node ``(x, y)`` carries a gate diagonal at width ``w``."""
    low, high = GATE_ROWS
    if not low <= y <= high:
        return False
    return 0 <= x <= 6 * w or 34 - 6 * w <= x <= 34


def gate_graph(w: float, strict_zero: bool = False) -> Tuple[PlaneGraph, Layout]:
    """
        The 36 by 36 grid with a gate of diagonals across rows 12 to 20.

        Node ``(x, y)`` inside the gate gains ``(x, y)-(x+1, y+1)`` when ``x``
        is even and ``(x, y)-(x+1, y-1)`` when ``x`` is odd. Width 3 closes the
        gate across the whole grid.

        Args:
            w: Gate width in ``[0, 3]``
            strict_zero: At ``w == 0`` add no diagonals at all (the literal
                ranges still contain columns 0 and 34)

        Raises:
            ValueError: If ``w`` is outside ``[0, 3]``
    """
    if not 0 <= w <= 3:
        raise ValueError(f"gate width must lie in [0, 3], got {w}")
    size = GATE_SIZE
    pairs = grid_pairs(size, size)
    if not (strict_zero and w == 0):
        for y in range(size):
            for x in range(size - 1):
                if not in_gate(x, y, w):
                    continue
                target_y = y + 1 if x % 2 == 0 else y - 1
                pairs.append((y * size + x, target_y * size + x + 1))
    logger.debug(f"Gate graph w={w}: {len(pairs) - 2 * size * (size - 1)} diagonals")
    return embed(size * size, pairs, grid_coords(size, size))


def franken_graph(n: int) -> Tuple[PlaneGraph, Layout]:
    """
        Square lattice below, triangular lattice above.

        Nodes form a grid ``n`` wide and ``2n`` high. Every unit square whose
        bottom row is ``n`` or higher gains its "/" diagonal; the row of squares
        between the halves stays square.
    """
    if n < 2:
        raise ValueError(f"franken_graph needs n >= 2, got {n}")
    width, height = n, 2 * n
    pairs = grid_pairs(width, height)
    for y in range(n, height - 1):
        for x in range(width - 1):
            pairs.append((y * width + x, (y + 1) * width + x + 1))
    return embed(width * height, pairs, grid_coords(width, height))


def triangular_patch(n: int) -> Tuple[PlaneGraph, Layout]:
    """The ``n`` by ``n`` grid with every square split by its "/" diagonal."""
    if n < 2:
        raise ValueError(f"triangular_patch needs n >= 2, got {n}")
    pairs = grid_pairs(n, n)
    for y in range(n - 1):
        for x in range(n - 1):
            pairs.append((y * n + x, (y + 1) * n + x + 1))
    return embed(n * n, pairs, grid_coords(n, n))


def cycle_graph(n: int) -> Tuple[PlaneGraph, Layout]:
    if n < 3:
        raise ValueError(f"cycle_graph needs n >= 3, got {n}")
    coords = {i: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)}
    return embed(n, [(i, (i + 1) % n) for i in range(n)], coords)


def k4_plane() -> Tuple[PlaneGraph, Layout]:
    """K4 drawn as a triangle with a center node (node 3)."""
    coords = {
        0: (0.0, 2.0),
        1: (-math.sqrt(3), -1.0),
        2: (math.sqrt(3), -1.0),
        3: (0.0, 0.0),
    }
    pairs = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]
    return embed(4, pairs, coords)


def theta_graph(lengths: Sequence[int] = (1, 2, 2)) -> MultiGraph:
    """
        Internally disjoint paths of the given lengths between nodes 0 and 1.

        The default is the 4-cycle with a chord.
    """
    if len(lengths) < 2 or any(length < 1 for length in lengths):
        raise ValueError("theta_graph needs at least two paths of positive length")
    pairs: List[Tuple[int, int]] = []
    node_count = 2
    for length in lengths:
        previous = 0
        for _ in range(length - 1):
            pairs.append((previous, node_count))
            previous = node_count
            node_count += 1
        pairs.append((previous, 1))
    return MultiGraph.from_pairs(node_count, pairs)


def random_sp_graph(rng: np.random.Generator, edges: int) -> MultiGraph:
    """
        Random two-terminal series-parallel multigraph with terminals 0 and 1.

        Starts from a single edge and repeatedly subdivides or doubles a
        uniformly chosen edge until ``edges`` edges exist.
    """
    if edges < 1:
        raise ValueError("random_sp_graph needs at least one edge")
    pairs: List[Tuple[int, int]] = [(0, 1)]
    node_count = 2
    while len(pairs) < edges:
        index = int(rng.integers(len(pairs)))
        u, v = pairs[index]
        if rng.random() < 0.5:
            pairs[index] = (u, node_count)
            pairs.append((node_count, v))
            node_count += 1
        else:
            pairs.append((u, v))
    return MultiGraph.from_pairs(node_count, pairs)


def random_plane_graph(
    rng: np.random.Generator, n: int = 3, deletions: int = 4
) -> Tuple[PlaneGraph, Layout]:
    """
        Random bridgeless spanning subgraph of a triangulated grid.

        Up to ``deletions`` uniformly chosen edges are removed, skipping any
        removal that would leave a bridge. The rotation system is inherited from
        the straight-line drawing.
    """
    base, layout = triangular_patch(n)
    graph = base.graph
    for _ in range(deletions):
        candidates = list(range(graph.number_of_edges))
        rng.shuffle(candidates)
        for edge_id in candidates:
            trial, _ = delete_edges(graph, [edge_id])
            if is_connected(trial) and not bridges(trial):
                graph = trial
                break
        else:
            break
    if not is_connected(graph):
        raise GraphStructureError("random plane graph became disconnected")
    return plane_from_layout(graph, layout), layout
