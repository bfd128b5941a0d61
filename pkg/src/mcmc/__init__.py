"""
    Flip-walk Markov chain and its heatmap output.
"""

from .flip import *
from .heatmap import *
