"""
    Exact sampling from counting: decide elements one at a time.

    Given conditional inclusion probabilities ``p(i | chosen)``, walking the
    universe in order and keeping each element with its conditional
    probability draws a set from exactly the distribution the oracle
    describes. The oracles here come from the series-parallel counting
    programs (simple cycles, balanced cuts) or from brute-force families.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Union

from ..errors import NoSampleError
from ..graphs.core import comp, is_connected_partition, to_fraction
from ..models.graph_models import EdgeSet, MultiGraph, Partition
from ..models.sampler_models import MarginalOracle
from ..spdp.cycles import sc_marginal_mass, sp_completion
from ..spdp.remainder import balanced_count_remainder, sc_count_remainder
from .rng import SeededRng

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction, str, float]


def inductive_sample(oracle: MarginalOracle, rng: SeededRng) -> FrozenSet[int]:
    """
        Draw one set by deciding the universe in order.

        Args:
            oracle: Conditional inclusion probabilities
            rng: Random stream

        Raises:
            ValueError: If the oracle returns a value outside [0, 1]

        Example:
            >>> point = MarginalOracle([0, 1, 2], lambda i, chosen: Fraction(int(i != 1)))
            >>> inductive_sample(point, SeededRng(0))
            frozenset({0, 2})
    """
    chosen: Set[int] = set()
    for element in oracle.universe:
        p = Fraction(oracle.query(element, frozenset(chosen)))
        if not 0 <= p <= 1:
            raise ValueError(f"{oracle.name} returned {p} for element {element}")
        if rng.bernoulli(p):
            chosen.add(element)
    return frozenset(chosen)


def _ratio(numerator: Fraction, denominator: Fraction, what: str) -> Fraction:
    if denominator == 0:
        raise NoSampleError(f"{what}: conditioning event has zero mass")
    return Fraction(numerator) / Fraction(denominator)


def _conditional(
    universe: Sequence[int], mass: Callable[[FrozenSet[int], FrozenSet[int]], Fraction], name: str
) -> MarginalOracle:
    position = {element: i for i, element in enumerate(universe)}

    def query(element: int, chosen: FrozenSet[int]) -> Fraction:
        earlier = frozenset(universe[:position[element]])
        skipped = earlier - chosen
        return _ratio(mass(chosen | {element}, skipped), mass(chosen, skipped), name)

    return MarginalOracle(list(universe), query, name)


def family_oracle(
    family: Sequence[Iterable[int]],
    masses: Optional[Sequence[Rational]] = None,
    universe: Optional[Sequence[int]] = None,
) -> MarginalOracle:
    """
        Oracle of an explicit weighted family of sets.

        Args:
            family: Support of the distribution
            masses: Nonnegative mass per member (None for uniform)
            universe: Decision order (None sorts the union of the family)

        Raises:
            NoSampleError: If the family has zero total mass
    """
    members = [frozenset(s) for s in family]
    weights = [to_fraction(m) for m in masses] if masses is not None else [Fraction(1)] * len(members)
    if not members or sum(weights) == 0:
        raise NoSampleError("family oracle over an empty or massless family")
    order = list(universe) if universe is not None else sorted(set().union(*members))

    def mass(chosen: FrozenSet[int], skipped: FrozenSet[int]) -> Fraction:
        return sum(
            (w for s, w in zip(members, weights) if chosen <= s and not (skipped & s)),
            Fraction(0),
        )

    return _conditional(order, mass, 'family oracle')


def cycle_oracle(
    g: MultiGraph,
    c: Optional[Mapping[int, Rational]] = None,
    method: str = 'direct',
    d: Optional[int] = None,
) -> MarginalOracle:
    """
        Oracle of the simple cycles of a treewidth-2 graph under ``nu_c``.

        Args:
            g: Multigraph of treewidth at most two
            c: Nonnegative edge weights (None for the uniform distribution)
            method: ``direct`` reads marked generating-function coefficients,
                ``remainder`` divides bigon-chain counts (unweighted only)
            d: Bigons per forced edge for the remainder method

        Raises:
            ValueError: On an unknown method, or weights with the remainder method
    """
    universe = [e.id for e in g.edges if e.u != e.v]
    if method == 'direct':
        completion = sp_completion(g)

        def mass(chosen: FrozenSet[int], skipped: FrozenSet[int]) -> Fraction:
            return sc_marginal_mass(g, c, chosen, skipped, completion=completion)

    elif method == 'remainder':
        if c is not None:
            raise ValueError("the remainder method counts cycles; it does not take weights")

        def mass(chosen: FrozenSet[int], skipped: FrozenSet[int]) -> Fraction:
            return Fraction(sc_count_remainder(g, chosen, skipped, d))

    else:
        raise ValueError(f"unknown marginal method '{method}'")
    return _conditional(universe, mass, f'cycle oracle ({method})')


def sample_sc_nu_c(
    g: MultiGraph,
    c: Optional[Mapping[int, Rational]],
    rng: SeededRng,
    method: str = 'direct',
    d: Optional[int] = None,
) -> EdgeSet:
    """
        One simple cycle drawn with probability proportional to ``prod c(e)``.

        Raises:
            NoSampleError: If ``g`` has no simple cycle of positive mass
            TreewidthError: If ``g`` has treewidth above two
    """
    oracle = cycle_oracle(g, c, method, d)
    if sc_marginal_mass(g, c, [], []) == 0:
        raise NoSampleError("the graph has no simple cycle of positive mass")
    cycle = inductive_sample(oracle, rng)
    logger.debug(f"Sampled a simple cycle of length {len(cycle)}")
    return cycle


def sample_sc_uniform(
    g: MultiGraph, rng: SeededRng, method: str = 'direct', d: Optional[int] = None
) -> EdgeSet:
    """
        One simple cycle, uniformly at random.

        Example:
            >>> bigon = MultiGraph.from_pairs(2, [(0, 1), (0, 1)])
            >>> sample_sc_uniform(bigon, SeededRng(1))
            frozenset({0, 1})
    """
    return sample_sc_nu_c(g, None, rng, method, d)


def balanced_cut_oracle(
    g: MultiGraph, w: Optional[Sequence[int]] = None, d: Optional[int] = None
) -> MarginalOracle:
    """Oracle of the cut sets of balanced connected 2-partitions, uniform."""
    universe = [e.id for e in g.edges if e.u != e.v]
    cache: Dict[tuple, Fraction] = {}

    def mass(chosen: FrozenSet[int], skipped: FrozenSet[int]) -> Fraction:
        key = (chosen, skipped)
        if key not in cache:
            cache[key] = Fraction(balanced_count_remainder(g, w, chosen, skipped, d))
        return cache[key]

    return _conditional(universe, mass, 'balanced cut oracle')


def sample_balanced_uniform(
    g: MultiGraph, w: Optional[Sequence[int]], rng: SeededRng, d: Optional[int] = None
) -> Partition:
    """
        A uniformly random balanced connected 2-partition of a weighted SP graph.

        The cut set is drawn edge by edge, then the partition is read off as
        the components left after deleting it.

        Args:
            g: Series-parallel graph
            w: Node weights (None reads the graph's own)
            rng: Random stream
            d: Star width for the remainder counts (None uses the safe default)

        Raises:
            NoSampleError: If no balanced partition exists (odd total weight included)
    """
    weights = list(w) if w is not None else g.weights()
    if sum(weights) % 2:
        raise NoSampleError(f"total weight {sum(weights)} is odd; no balanced partition exists")
    if balanced_count_remainder(g, weights, [], [], d) == 0:
        raise NoSampleError("the graph has no balanced connected 2-partition")
    cut_set = inductive_sample(balanced_cut_oracle(g, weights, d), rng)
    partition = comp(g, cut_set)
    if partition.k != 2 or not is_connected_partition(g, partition):
        raise NoSampleError(f"sampled cut {sorted(cut_set)} does not split the graph in two")
    return partition


def sample_many(draw: Callable[[SeededRng], object], count: int, rng: SeededRng) -> List[object]:
    """
        ``count`` draws, each on its own spawned stream.

        Child streams are spawned up front, so the batch is reproducible
        from the parent seed regardless of how the draws are scheduled.
    """
    return [draw(child) for child in rng.spawn(count)]
