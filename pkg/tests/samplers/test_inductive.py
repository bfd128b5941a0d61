from fractions import Fraction

import pytest

from src.errors import NoSampleError
from src.generators.lattices import theta_graph
from src.graphs.core import cut, is_connected_partition, is_eps_balanced
from src.models.graph_models import MultiGraph
from src.models.sampler_models import MarginalOracle
from src.oracle.enumeration import enum_simple_cycles
from src.samplers.inductive import (
    balanced_cut_oracle,
    cycle_oracle,
    family_oracle,
    inductive_sample,
    sample_balanced_uniform,
    sample_many,
    sample_sc_nu_c,
    sample_sc_uniform,
)
from src.samplers.rng import SeededRng


def exact_probability(oracle, target):
    """Probability that the inductive walk over ``oracle`` returns exactly ``target``."""
    chosen = set()
    probability = Fraction(1)
    for element in oracle.universe:
        p = Fraction(oracle.query(element, frozenset(chosen)))
        if element in target:
            probability *= p
            chosen.add(element)
        else:
            probability *= 1 - p
        if probability == 0:
            break
    return probability


def test_deterministic_oracle():
    point = MarginalOracle([0, 1, 2], lambda i, chosen: Fraction(int(i != 1)))
    assert inductive_sample(point, SeededRng(0)) == frozenset({0, 2})


def test_oracle_values_are_checked():
    broken = MarginalOracle([0], lambda i, chosen: Fraction(2))
    with pytest.raises(ValueError):
        inductive_sample(broken, SeededRng(0))


class TestFamilyOracle:
    def test_weighted_family_is_exact(self):
        family = [{0}, {1}, {0, 1}]
        oracle = family_oracle(family, [1, 2, 3])
        assert [exact_probability(oracle, s) for s in family] == [
            Fraction(1, 6), Fraction(1, 3), Fraction(1, 2),
        ]

    def test_massless_family(self):
        with pytest.raises(NoSampleError):
            family_oracle([])
        with pytest.raises(NoSampleError):
            family_oracle([{0}], [0])


class TestCycleOracle:
    @pytest.mark.parametrize('method, d', [('direct', None), ('remainder', 4)])
    def test_uniform_over_theta_cycles(self, theta, method, d):
        oracle = cycle_oracle(theta, method=method, d=d)
        cycles = enum_simple_cycles(theta)
        assert [exact_probability(oracle, c) for c in cycles] == [Fraction(1, 3)] * 3

    def test_edge_weights(self, theta):
        oracle = cycle_oracle(theta, {0: 2, 1: 1, 2: 1, 3: 1, 4: 1})
        probabilities = [exact_probability(oracle, c) for c in enum_simple_cycles(theta)]
        assert probabilities == [Fraction(2, 5), Fraction(2, 5), Fraction(1, 5)]

    def test_uniform_on_a_larger_sp_graph(self):
        g = theta_graph((1, 2, 3, 2))
        oracle = cycle_oracle(g)
        cycles = enum_simple_cycles(g)
        assert all(exact_probability(oracle, c) == Fraction(1, len(cycles)) for c in cycles)

    def test_bad_methods(self, theta):
        with pytest.raises(ValueError):
            cycle_oracle(theta, method='guess')
        with pytest.raises(ValueError):
            cycle_oracle(theta, {e: 1 for e in range(5)}, method='remainder')


class TestCycleSampler:
    def test_samples_are_cycles(self, theta):
        cycles = set(enum_simple_cycles(theta))
        for seed in range(5):
            assert sample_sc_uniform(theta, SeededRng(seed)) in cycles

    def test_reproducible(self, theta):
        assert sample_sc_uniform(theta, SeededRng(9)) == sample_sc_uniform(theta, SeededRng(9))

    def test_bigon(self):
        bigon = MultiGraph.from_pairs(2, [(0, 1), (0, 1)])
        assert sample_sc_uniform(bigon, SeededRng(1)) == frozenset({0, 1})

    def test_remainder_method_with_default_depth(self):
        g = theta_graph((1, 2, 3))
        assert sample_sc_uniform(g, SeededRng(3), method='remainder') in set(enum_simple_cycles(g))

    def test_zero_weight_edges_are_avoided(self, theta):
        c = {0: 0, 1: 1, 2: 1, 3: 1, 4: 1}
        assert sample_sc_nu_c(theta, c, SeededRng(4)) == frozenset({1, 2, 3, 4})

    def test_forest_has_no_cycle(self, path4):
        with pytest.raises(NoSampleError):
            sample_sc_uniform(path4, SeededRng(0))


class TestBalancedSampler:
    def test_balanced_cut_oracle_is_uniform(self, c6):
        oracle = balanced_cut_oracle(c6, d=4)
        cuts = [frozenset({0, 3}), frozenset({1, 4}), frozenset({2, 5})]
        assert [exact_probability(oracle, c) for c in cuts] == [Fraction(1, 3)] * 3

    def test_samples_are_balanced_connected_partitions(self, c6):
        for seed in range(3):
            p = sample_balanced_uniform(c6, None, SeededRng(seed), d=4)
            assert is_connected_partition(c6, p)
            assert is_eps_balanced(c6, p, 0)
            assert len(cut(c6, p)) == 2

    def test_oracle_on_a_parallel_composition(self, theta):
        oracle = balanced_cut_oracle(theta, d=4)
        cuts = [frozenset({0, 2, 3}), frozenset({0, 1, 4})]
        assert [exact_probability(oracle, c) for c in cuts] == [Fraction(1, 2)] * 2

    def test_default_depth(self, c6):
        p = sample_balanced_uniform(c6, None, SeededRng(2))
        assert is_connected_partition(c6, p)
        assert is_eps_balanced(c6, p, 0)

    def test_weighted_fan_has_one_balanced_partition(self):
        fan = theta_graph((1, 2, 2, 2))
        p = sample_balanced_uniform(fan, [1, 1, 3, 1, 0], SeededRng(0))
        assert cut(fan, p) == frozenset({1, 2})

    def test_odd_total(self, path4):
        with pytest.raises(NoSampleError):
            sample_balanced_uniform(path4, [1, 1, 1, 2], SeededRng(0))

    def test_no_balanced_partition(self):
        edge = MultiGraph.from_pairs(2, [(0, 1)])
        with pytest.raises(NoSampleError):
            sample_balanced_uniform(edge, [3, 1], SeededRng(0), d=2)


def test_sample_many_is_reproducible(theta):
    def draw(rng):
        return sample_sc_uniform(theta, rng)

    assert sample_many(draw, 4, SeededRng(12)) == sample_many(draw, 4, SeededRng(12))
