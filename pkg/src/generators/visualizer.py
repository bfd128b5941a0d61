"""
    DOT renderings of graphs, partitions and cut frequencies.

    Produces Graphviz text for debugging gadgets and inspecting sampled
    plans. Nodes are colored by block, cut edges are drawn bold, and optional
    per-edge frequencies shade edges from gray (never cut) to yellow (always
    cut).
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ..models.graph_models import Layout, MultiGraph, Partition

logger = logging.getLogger(__name__)

BLOCK_COLORS = ['#6699cc', '#cc6666', '#99cc66', '#cc99cc', '#ffcc66', '#66cccc']


class GraphVisualizer:
    """
        Generates DOT diagrams of graphs and partitions.

        Args:
            config: Configuration dictionary; reads ``output.dot_scale``
                (layout scale, default 1.0)

        Example:
            >>> visualizer = GraphVisualizer(config)
            >>> dot = visualizer.generate_dot(graph, partition=p)
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.scale = float(self.config.get('output', {}).get('dot_scale', 1.0))

    def generate_dot(
        self,
        graph: MultiGraph,
        layout: Optional[Layout] = None,
        partition: Optional[Partition] = None,
        edge_frequency: Optional[Sequence[float]] = None,
        name: str = 'G',
    ) -> str:
        """
            Render a multigraph as an undirected DOT graph.

            Args:
                graph: Graph to draw
                layout: Pinned positions, when available
                partition: Colors nodes by block and bolds cut edges
                edge_frequency: Per-edge values in [0, 1] shading the edges
                name: Graph name
        """
        lines = [f"graph {name} {{", "    node [shape=circle, style=filled, fontsize=8];"]
        lines.extend(self._node_lines(graph, layout, partition))
        lines.extend(self._edge_lines(graph, partition, edge_frequency))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def _node_lines(
        self, graph: MultiGraph, layout: Optional[Layout], partition: Optional[Partition]
    ) -> List[str]:
        lines = []
        for node in graph.nodes():
            attributes = [f'label="{node}"']
            if partition is not None:
                color = BLOCK_COLORS[partition.assign[node] % len(BLOCK_COLORS)]
                attributes.append(f'fillcolor="{color}"')
            if graph.node_weight is not None:
                attributes.append(f'xlabel="w={graph.weight(node)}"')
            if layout is not None and node in layout.coords:
                x, y = layout.coords[node]
                attributes.append(f'pos="{x * self.scale:g},{y * self.scale:g}!"')
            lines.append(f"    {node} [{', '.join(attributes)}];")
        return lines

    def _edge_lines(
        self,
        graph: MultiGraph,
        partition: Optional[Partition],
        edge_frequency: Optional[Sequence[float]],
    ) -> List[str]:
        lines = []
        for edge in graph.edges:
            attributes = [f'label="{edge.id}"']
            if partition is not None and partition.assign[edge.u] != partition.assign[edge.v]:
                attributes.append('penwidth=3')
            if edge_frequency is not None:
                attributes.append(f'color="{self._shade(edge_frequency[edge.id])}"')
            lines.append(f"    {edge.u} -- {edge.v} [{', '.join(attributes)}];")
        return lines

    @staticmethod
    def _shade(value: float) -> str:
        value = min(max(float(value), 0.0), 1.0)
        red = int(round(128 + 127 * value))
        green = int(round(128 + 127 * value))
        blue = int(round(128 * (1 - value)))
        return f"#{red:02x}{green:02x}{blue:02x}"

    def save_diagram(self, diagram: str, output_path: Path) -> Path:
        """Write DOT text, creating parent directories."""
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, 'w') as f:
            f.write(diagram)
        logger.debug(f"Wrote diagram to {output_path}")
        return output_path
