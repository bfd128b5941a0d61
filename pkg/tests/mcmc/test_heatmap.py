import numpy as np
import pandas as pd
import pytest

from src.generators.lattices import grid
from src.mcmc.heatmap import heatmap_export, pgm_from_csv, read_pgm, render_pgm
from src.models.chain_models import FlipStats


@pytest.fixture
def square_stats():
    plane, layout = grid(2, 2)
    stats = FlipStats(
        flips=np.array([0, 3, 1, 2], dtype=np.int64),
        occupancy=np.zeros(4, dtype=np.int64),
        cut_counts=np.array([5, 0, 10, 5], dtype=np.int64),
        steps=10,
    )
    return stats, layout


def test_export_writes_tables_and_images(tmp_path, square_stats):
    stats, layout = square_stats
    written = heatmap_export(stats, layout, tmp_path)
    assert [p.name for p in written] == [
        'flips_nodes.csv', 'flips_edges.csv', 'flips_flips.pgm', 'flips_occupancy.pgm'
    ]
    width, height, max_gray, rows = read_pgm(tmp_path / 'flips_flips.pgm')
    assert (width, height, max_gray) == (2, 2, 255)
    assert rows == [[85, 170], [0, 255]]
    assert read_pgm(tmp_path / 'flips_occupancy.pgm')[3] == [[0, 0], [0, 0]]

    edges = pd.read_csv(tmp_path / 'flips_edges.csv')
    assert edges['cut_frequency'].tolist() == [0.5, 0.0, 1.0, 0.5]


def test_images_are_reproducible_from_the_table(tmp_path, square_stats):
    stats, layout = square_stats
    heatmap_export(stats, layout, tmp_path, prefix='run')
    assert pgm_from_csv(tmp_path / 'run_nodes.csv', 'flips') == (tmp_path / 'run_flips.pgm').read_text()
    with pytest.raises(ValueError):
        pgm_from_csv(tmp_path / 'run_nodes.csv', 'average_block')


def test_without_layout_only_tables(tmp_path, square_stats):
    stats, _ = square_stats
    written = heatmap_export(stats, None, tmp_path)
    assert len(written) == 2
    with pytest.raises(ValueError):
        pgm_from_csv(tmp_path / 'flips_nodes.csv')


def test_render_pgm_leaves_missing_cells_black():
    assert render_pgm({0: 0, 1: 2}, {0: (0, 0), 1: (1, 0)}, max_gray=2) == 'P2\n2 1\n2\n0 2\n'
    text = render_pgm({0: 4}, {0: (0, 0), 1: (1, 1)}, max_gray=4)
    assert text == 'P2\n2 2\n4\n0 0\n4 0\n'


def test_read_pgm_rejects_other_formats(tmp_path):
    path = tmp_path / 'image.pgm'
    path.write_text('P5\n1 1\n255\n0\n')
    with pytest.raises(ValueError):
        read_pgm(path)
