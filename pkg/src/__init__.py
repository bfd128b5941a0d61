"""
    Partition Sampler - exact counting, exact sampling and flip-walk MCMC for connected graph partitions.
"""
__version__ = "0.1.0"
