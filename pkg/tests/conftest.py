"""
    Shared fixtures: small graphs with hand-checked counts and the packaged configuration.
"""
import copy

import pytest

from src.generators.lattices import cycle_graph, grid, k4_plane, theta_graph
from src.models.graph_models import MultiGraph
from src.utils.config_manager import ConfigManager


@pytest.fixture
def c4() -> MultiGraph:
    return MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def c6() -> MultiGraph:
    return cycle_graph(6)[0].graph


@pytest.fixture
def path4() -> MultiGraph:
    return MultiGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def theta() -> MultiGraph:
    """4-cycle with a chord: edge 0 is the chord, cycles {0,1,2}, {0,3,4}, {1,2,3,4}."""
    return theta_graph((1, 2, 2))


@pytest.fixture
def k4():
    return k4_plane()[0]


@pytest.fixture
def grid4():
    return grid(4, 4)


@pytest.fixture
def app_config(tmp_path):
    config = copy.deepcopy(ConfigManager().config)
    config['experiments']['output_dir'] = str(tmp_path / 'runs')
    config['logging']['file'] = None
    return config
