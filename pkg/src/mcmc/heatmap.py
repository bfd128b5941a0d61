"""
    Flip-walk statistics as CSV tables and grayscale PGM heatmaps.

    Images are rendered from the integer fields (flip counts and occupancy
    sums) so re-importing the CSV reproduces them exactly. Pixel columns and
    rows are the distinct x and y coordinates of the layout, with the largest
    y on the top row.
"""

import logging
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import pandas as pd

from ..models.chain_models import FlipStats
from ..models.graph_models import Layout

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

IMAGE_FIELDS = ('flips', 'occupancy')


def stats_frame(stats: FlipStats, layout: Optional[Layout] = None) -> pd.DataFrame:
    """Per-node table of flips, occupancy and average block (with coordinates if known)."""
    frame = pd.DataFrame({
        'node': range(len(stats.flips)),
        'flips': stats.flips,
        'occupancy': stats.occupancy,
        'average_block': stats.average_block(),
    })
    if layout is not None and layout.covers(len(stats.flips)):
        frame.insert(1, 'x', [layout.coords[v][0] for v in frame['node']])
        frame.insert(2, 'y', [layout.coords[v][1] for v in frame['node']])
    return frame


def cut_frame(stats: FlipStats) -> pd.DataFrame:
    steps = max(stats.steps, 1)
    return pd.DataFrame({
        'edge': range(len(stats.cut_counts)),
        'cut_count': stats.cut_counts,
        'cut_frequency': stats.cut_counts / steps,
    })


def _gray(value: int, top: int, max_gray: int) -> int:
    if top <= 0:
        return 0
    return (value * max_gray + top // 2) // top


def render_pgm(
    values: Mapping[int, int], coords: Mapping[int, Tuple[float, float]], max_gray: int = 255
) -> str:
    """
        Plain (P2) PGM text of a per-node integer field.

        Cells without a node stay black.

        Example:
            >>> render_pgm({0: 0, 1: 2}, {0: (0, 0), 1: (1, 0)}, max_gray=2)
            'P2\\n2 1\\n2\\n0 2\\n'
    """
    columns = sorted({x for x, _ in coords.values()})
    rows = sorted({y for _, y in coords.values()}, reverse=True)
    column_of = {x: i for i, x in enumerate(columns)}
    row_of = {y: i for i, y in enumerate(rows)}
    pixels: List[List[int]] = [[0] * len(columns) for _ in rows]
    top = max((int(v) for v in values.values()), default=0)
    for node, (x, y) in coords.items():
        pixels[row_of[y]][column_of[x]] = _gray(int(values.get(node, 0)), top, max_gray)
    lines = ['P2', f'{len(columns)} {len(rows)}', str(max_gray)]
    lines += [' '.join(str(p) for p in row) for row in pixels]
    return '\n'.join(lines) + '\n'


def _frame_images(frame: pd.DataFrame, max_gray: int) -> Dict[str, str]:
    coords = {int(n): (float(x), float(y)) for n, x, y in zip(frame['node'], frame['x'], frame['y'])}
    return {
        field: render_pgm(dict(zip(frame['node'].astype(int), frame[field].astype(int))), coords, max_gray)
        for field in IMAGE_FIELDS
    }


def heatmap_export(
    stats: FlipStats,
    layout: Optional[Layout],
    out_dir: PathLike,
    prefix: str = 'flips',
    max_gray: int = 255,
    float_format: str = '%.6f',
) -> List[Path]:
    """
        Write the node table, the edge-cut table and (with coordinates) the PGM images.

        Args:
            stats: Flushed chain statistics
            layout: Node coordinates, or None
            out_dir: Directory to write into (created if missing)
            prefix: File name prefix
            max_gray: Maximum gray level of the images
            float_format: ``to_csv`` float format

        Returns:
            Paths written, tables first
    """
    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    frame = stats_frame(stats, layout)
    nodes_csv = target / f'{prefix}_nodes.csv'
    edges_csv = target / f'{prefix}_edges.csv'
    frame.to_csv(nodes_csv, index=False, float_format=float_format)
    cut_frame(stats).to_csv(edges_csv, index=False, float_format=float_format)
    written = [nodes_csv, edges_csv]
    if 'x' not in frame.columns:
        logger.warning("Layout missing or incomplete; writing CSV tables only")
        return written
    for field, text in _frame_images(frame, max_gray).items():
        path = target / f'{prefix}_{field}.pgm'
        path.write_text(text)
        written.append(path)
    logger.info(f"Heatmaps written to {target}")
    return written


def pgm_from_csv(csv_path: PathLike, field: str = 'flips', max_gray: int = 255) -> str:
    """
        Re-render one image from an exported node table.

        Raises:
            ValueError: If the table has no coordinates or no such field
    """
    frame = pd.read_csv(csv_path)
    missing = [column for column in ('x', 'y', field) if column not in frame.columns]
    if missing or field not in IMAGE_FIELDS:
        raise ValueError(f"cannot render '{field}' from {csv_path}: missing {missing or [field]}")
    return _frame_images(frame, max_gray)[field]


def read_pgm(path: PathLike) -> Tuple[int, int, int, List[List[int]]]:
    """Parse a plain PGM into (width, height, max_gray, rows)."""
    tokens: Sequence[str] = Path(path).read_text().split()
    if not tokens or tokens[0] != 'P2':
        raise ValueError(f"{path} is not a plain PGM")
    width, height, max_gray = (int(t) for t in tokens[1:4])
    values = [int(t) for t in tokens[4:]]
    return width, height, max_gray, [values[r * width:(r + 1) * width] for r in range(height)]
