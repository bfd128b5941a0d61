"""
    Simple-cycle and simple-path generating functions on series-parallel graphs.

    For an SP graph with terminals ``s, t`` and edge weights ``w``,
    ``f_SC`` sums the weight products of all simple cycles and ``f_SP`` those
    of all simple ``s``-``t`` paths. Composition rules:

    * series: ``SC = SC1 + SC2``, ``SP = SP1 * SP2``
    * parallel: ``SC = SC1 + SC2 + SP1 * SP2``, ``SP = SP1 + SP2``

    Weights are polynomials in a marker ``x``; marking the edges of ``J``
    turns the coefficient of ``x^|J|`` into the mass of cycles through all
    of ``J``.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from ..errors import GraphStructureError, NotSeriesParallelError
from ..graphs.core import as_edge_set, to_fraction
from ..models.graph_models import MultiGraph
from ..models.sp_models import Coefficient, SPKind, SPTree, UniPoly
from .sptree import embed_treewidth2, find_sp_terminals

logger = logging.getLogger(__name__)

Weight = Union[UniPoly, Coefficient]
Completion = Tuple[MultiGraph, SPTree, Dict[int, int]]


def eval_fsc_fsp(
    tree: SPTree,
    w: Mapping[int, Weight],
    leaf_cycles: Optional[Mapping[int, Weight]] = None,
) -> Tuple[UniPoly, UniPoly]:
    """
        Evaluate ``(f_SC, f_SP)`` bottom-up over a decomposition tree.

        Args:
            tree: SP decomposition tree
            w: Weight of every leaf edge (polynomial or exact number)
            leaf_cycles: Optional cycle mass carried by a leaf; lets a leaf
                stand for a whole two-terminal gadget (a chain of ``d``
                bigons is ``f_SC = d``, ``f_SP = 2^d``)

        Returns:
            Tuple of (f_SC, f_SP) at the root

        Raises:
            KeyError: If a leaf edge has no weight

        Example:
            >>> bigon = MultiGraph.from_pairs(2, [(0, 1), (0, 1)])
            >>> eval_fsc_fsp(recognize_sp(bigon, 0, 1), {0: 1, 1: 1})
            (UniPoly(coeffs=(1,)), UniPoly(coeffs=(2,)))
    """
    cycles = leaf_cycles or {}
    values: Dict[int, Tuple[UniPoly, UniPoly]] = {}
    for node in tree.iter_postorder():
        if node.kind is SPKind.LEAF:
            values[id(node)] = (
                UniPoly.coerce(cycles.get(node.edge, 0)),
                UniPoly.coerce(w[node.edge]),
            )
            continue
        (sc1, sp1), (sc2, sp2) = (values.pop(id(child)) for child in node.children)
        if node.kind is SPKind.SERIES:
            values[id(node)] = (sc1 + sc2, sp1 * sp2)
        else:
            values[id(node)] = (sc1 + sc2 + sp1 * sp2, sp1 + sp2)
    return values[id(tree)]


def sp_completion(g: MultiGraph) -> Completion:
    """
        A decomposable graph carrying every non-loop edge of ``g``.

        Returns ``g`` itself (minus self-loops) when it is series-parallel,
        otherwise its treewidth-2 completion. Edges added by the completion
        are absent from the returned edge map and must weigh zero.

        Raises:
            TreewidthError: If ``g`` has treewidth above two
    """
    if g.node_count >= 2 and not any(edge.u == edge.v for edge in g.edges):
        try:
            return g, find_sp_terminals(g), {e.id: e.id for e in g.edges}
        except NotSeriesParallelError:
            pass
    return embed_treewidth2(g)


def cycle_polynomial(
    g: MultiGraph,
    w: Mapping[int, Weight],
    leaf_cycles: Optional[Mapping[int, Weight]] = None,
    completion: Optional[Completion] = None,
) -> UniPoly:
    """
        ``f_SC(g, w)`` for a multigraph of treewidth at most two.

        Self-loops are not cycles and are ignored. Pass a precomputed
        ``completion`` (from ``sp_completion``) when evaluating many weightings
        of the same graph.

        Raises:
            TreewidthError: If ``g`` has treewidth above two
    """
    if g.node_count < 2:
        return UniPoly()
    completed, tree, edge_map = completion or sp_completion(g)
    weights: Dict[int, Weight] = {e.id: 0 for e in completed.edges}
    cycles: Dict[int, Weight] = {}
    for base_id, derived_id in edge_map.items():
        weights[derived_id] = w[base_id]
        if leaf_cycles and base_id in leaf_cycles:
            cycles[derived_id] = leaf_cycles[base_id]
    fsc, _ = eval_fsc_fsp(tree, weights, cycles)
    return fsc


def count_simple_cycles(g: MultiGraph) -> int:
    """
        ``|SC(g)|`` for a multigraph of treewidth at most two.

        Example:
            >>> k23 = MultiGraph.from_pairs(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
            >>> count_simple_cycles(k23)
            3
    """
    if g.number_of_edges == 0:
        return 0
    return int(cycle_polynomial(g, {e.id: 1 for e in g.edges}).evaluate(1))


def _disjoint(g: MultiGraph, j: Iterable[int], j2: Iterable[int]) -> Tuple[frozenset, frozenset]:
    forced, forbidden = as_edge_set(g, j), as_edge_set(g, j2)
    if forced & forbidden:
        raise ValueError(f"J and J' share edges {sorted(forced & forbidden)}")
    return forced, forbidden


def sc_marginal_mass(
    g: MultiGraph,
    c: Optional[Mapping[int, Union[Coefficient, str, float]]],
    j: Iterable[int],
    j2: Iterable[int],
    completion: Optional[Completion] = None,
) -> Fraction:
    """
        Edge-weight mass of the simple cycles containing ``J`` and avoiding ``J'``.

        Weights ``w(e) = x * c(e)`` on ``J``, ``0`` on ``J'`` and ``c(e)``
        elsewhere; the answer is the coefficient of ``x^|J|`` in ``f_SC``.

        Args:
            g: Multigraph of treewidth at most two
            c: Nonnegative rational edge weights (None for all ones)
            j: Edges every counted cycle contains
            j2: Edges no counted cycle contains

        Raises:
            ValueError: If ``J`` and ``J'`` intersect or a weight is negative
            TreewidthError: If ``g`` has treewidth above two

        Example:
            >>> sc_marginal_mass(theta, None, [0], [])
            Fraction(2, 1)
    """
    forced, forbidden = _disjoint(g, j, j2)
    weights: Dict[int, Weight] = {}
    marker = UniPoly.x()
    for edge in g.edges:
        value = to_fraction(c[edge.id]) if c is not None else Fraction(1)
        if value < 0:
            raise ValueError(f"edge {edge.id} has negative weight {value}")
        if edge.id in forbidden:
            weights[edge.id] = 0
        elif edge.id in forced:
            weights[edge.id] = marker * value
        else:
            weights[edge.id] = value
    if g.number_of_edges == 0:
        return Fraction(0)
    mass = Fraction(cycle_polynomial(g, weights, completion=completion).coefficient(len(forced)))
    logger.debug(
        f"Cycle mass through {len(forced)} edges avoiding {len(forbidden)}: "
        f"{mass.numerator.bit_length()}-bit numerator"
    )
    return mass


def marginal_cycle_count(g: MultiGraph, j: Iterable[int], j2: Iterable[int], d: int) -> int:
    """
        Number of simple cycles of the marginal graph ``G_{J,J'}(d)``.

        Each chain of ``d`` bigons is folded into a single leaf carrying
        ``d`` internal cycles and ``2^d`` crossing paths, so the marginal
        graph is never built.

        Raises:
            ValueError: If ``J`` and ``J'`` intersect or ``d < 0``
            GraphStructureError: If ``J`` holds a self-loop
    """
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    forced, forbidden = _disjoint(g, j, j2)
    if any(g.is_self_loop(e) for e in forced):
        raise GraphStructureError("a forced self-loop lies on no simple cycle")
    if g.number_of_edges == 0:
        return 0
    weights: Dict[int, Weight] = {}
    folded: Dict[int, Weight] = {}
    for edge in g.edges:
        if edge.id in forbidden:
            weights[edge.id] = 0
        elif edge.id in forced:
            weights[edge.id] = 2 ** d
            folded[edge.id] = d
        else:
            weights[edge.id] = 1
    return int(cycle_polynomial(g, weights, folded).evaluate(1))
