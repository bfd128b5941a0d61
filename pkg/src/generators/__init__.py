"""
    Graph families, party overlays, graph files and DOT rendering.
"""

from .lattices import *
from .elections import *
from .io import *
from .visualizer import GraphVisualizer
