"""
    Constrained counts by division with remainder.

    Amplifying every edge of ``J`` by a gadget with ``2^d`` crossings
    multiplies each object that uses all of ``J`` by ``2^(d|J|)``, while every
    object that misses some edge of ``J`` is multiplied by at most
    ``2^(d(|J|-1))``. Once ``d`` is large enough that the misses cannot add
    up to ``2^(d|J|)``, the constrained count is the integer quotient of the
    gadget count by that modulus.

    The quotient is only returned after checking that bound against the
    actual unconstrained count, so an undersized ``d`` raises instead of
    answering wrongly.
"""

import logging
from typing import Iterable, Optional, Sequence

from ..errors import InsufficientModulusError
from ..gadgets.marginal import w_marginal_graph
from ..graphs.core import as_edge_set
from ..models.graph_models import MultiGraph
from .cycles import marginal_cycle_count
from .tables import count_balanced

logger = logging.getLogger(__name__)


def default_cycle_exponent(n: int) -> int:
    """Bigons per forced edge that suffice on any ``n``-node graph."""
    return 36 * n ** 4


def default_balanced_exponent(n: int) -> int:
    """Star width per forced edge that suffices on any ``n``-node graph."""
    return n * n + 1


def _quotient(total: int, modulus: int, bound: int, what: str, d: int) -> int:
    if bound >= modulus:
        raise InsufficientModulusError(
            f"{what}: remainder may reach a {bound.bit_length()}-bit value but the modulus is "
            f"2^{modulus.bit_length() - 1} (d={d}); raise d"
        )
    quotient, remainder = divmod(total, modulus)
    logger.debug(
        f"{what}: {total.bit_length()}-bit total, quotient of {quotient.bit_length()} bits, "
        f"remainder of {remainder.bit_length()} bits (d={d})"
    )
    return quotient


def sc_count_remainder(
    g: MultiGraph, j: Iterable[int], j2: Iterable[int], d: Optional[int] = None
) -> int:
    """
        Number of simple cycles containing ``J`` and avoiding ``J'``, by remainder.

        Counts the cycles of the marginal graph (``J'`` deleted, ``J`` as bigon
        chains) and divides by ``2^(d|J|)``. The misses contribute at most
        ``S * 2^(d(|J|-1)) + d|J|`` where ``S`` counts the cycles avoiding
        ``J'``.

        Args:
            g: Multigraph of treewidth at most two
            j: Forced edges
            j2: Forbidden edges
            d: Bigons per forced edge (default ``36 n^4``)

        Raises:
            InsufficientModulusError: If ``d`` is too small for an exact quotient
            TreewidthError: If ``g`` has treewidth above two

        Example:
            >>> sc_count_remainder(theta, [0], [], d=4)
            2
    """
    forced = as_edge_set(g, j)
    if any(g.is_self_loop(e) for e in forced):
        return 0
    if not forced:
        return marginal_cycle_count(g, [], j2, 0)
    depth = default_cycle_exponent(g.node_count) if d is None else d
    if depth < 1:
        raise ValueError(f"d must be positive, got {depth}")
    total = marginal_cycle_count(g, forced, j2, depth)
    avoiding = marginal_cycle_count(g, [], j2, 0)
    bound = avoiding * 2 ** (depth * (len(forced) - 1)) + depth * len(forced)
    return _quotient(total, 2 ** (depth * len(forced)), bound, 'cycle count', depth)


def balanced_count_remainder(
    g: MultiGraph,
    w: Optional[Sequence[int]],
    j: Iterable[int],
    j2: Iterable[int],
    d: Optional[int] = None,
) -> int:
    """
        Number of balanced connected 2-partitions cutting ``J`` and not ``J'``.

        Counts balanced partitions of the weighted marginal graph (``J'``
        contracted, ``J`` as doubled stars of weightless nodes) and divides by
        ``2^(d|J|)``. The misses contribute at most ``B * 2^(d(|J|-1))`` where
        ``B`` counts balanced partitions leaving ``J'`` uncut.

        Args:
            g: Graph whose marginal graphs are series-parallel
            w: Node weights (None reads the graph's own)
            j: Edges that must be cut
            j2: Edges that must stay uncut
            d: Star width per forced edge (default ``n^2 + 1``)

        Raises:
            ValueError: If every node weighs zero
            InsufficientModulusError: If ``d`` is too small for an exact quotient
            NotSeriesParallelError: If a marginal graph is not series-parallel
    """
    if sum(w if w is not None else g.weights()) == 0:
        raise ValueError("balanced counts by remainder need a positive total weight")
    forced = as_edge_set(g, j)
    if any(g.is_self_loop(e) for e in forced):
        return 0
    base = w_marginal_graph(g, w, [], j2, 1).derived_graph
    avoiding = count_balanced(base)
    if not forced:
        return avoiding
    depth = default_balanced_exponent(g.node_count) if d is None else d
    derived = w_marginal_graph(g, w, forced, j2, depth).derived_graph
    total = count_balanced(derived)
    bound = avoiding * 2 ** (depth * (len(forced) - 1))
    return _quotient(total, 2 ** (depth * len(forced)), bound, 'balanced count', depth)
