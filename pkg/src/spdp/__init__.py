"""
    Series-parallel recognition and exact dynamic programs.

    Cycle generating functions and their marginals, balanced-partition split
    tables and the remainder extractors built on top of both.
"""

from .sptree import *
from .cycles import *
from .tables import *
from .remainder import *
