"""
    Exact oracles: brute-force enumeration, flip-walk state graphs and bottlenecks.
"""

from .enumeration import *
from .metagraph import *
