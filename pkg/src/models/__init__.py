"""
    Data models for graphs, gadgets, dynamic programs, chains and experiments.
"""

from .graph_models import *
from .gadget_models import *
from .sp_models import *
from .oracle_models import *
from .sampler_models import *
from .chain_models import *
from .experiment_models import *
