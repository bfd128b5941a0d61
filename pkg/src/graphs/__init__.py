"""
    Graph primitives: cuts, components, homology counts, plane faces and duality.
"""

from .core import *
from .plane import *
from .duality import *
