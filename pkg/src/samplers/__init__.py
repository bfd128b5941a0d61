"""
    Exact samplers built on counting, and spanning-tree partition samplers.
"""

from .rng import *
from .inductive import *
from .trees import *
