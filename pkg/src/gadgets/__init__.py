"""
    Gadget constructions with their projection, restriction and lift maps.
"""

from .bigons import *
from .rd import *
from .marginal import *
