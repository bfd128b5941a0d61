from fractions import Fraction

import pytest

from src.samplers.rng import SeededRng, as_rng


def test_same_seed_same_stream():
    a, b = SeededRng(7), SeededRng(7)
    assert [a.integers(100) for _ in range(20)] == [b.integers(100) for _ in range(20)]
    assert a.seed == 7


def test_spawned_streams_are_reproducible_and_distinct():
    first = [child.random() for child in SeededRng(3).spawn(3)]
    again = [child.random() for child in SeededRng(3).spawn(3)]
    assert first == again
    assert len(set(first)) == 3


def test_state_round_trip():
    rng = SeededRng(11)
    rng.random()
    state = rng.get_state()
    expected = [rng.random() for _ in range(5)]
    rng.set_state(state)
    assert [rng.random() for _ in range(5)] == expected


class TestBernoulli:
    def test_certain_outcomes(self):
        rng = SeededRng(0)
        assert all(rng.bernoulli(Fraction(1)) for _ in range(10))
        assert not any(rng.bernoulli(Fraction(0)) for _ in range(10))

    def test_frequency(self):
        rng = SeededRng(2024)
        hits = sum(rng.bernoulli(Fraction(1, 3)) for _ in range(6000))
        assert abs(hits / 6000 - 1 / 3) < 0.03

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            SeededRng(0).bernoulli(Fraction(3, 2))


def test_choice():
    rng = SeededRng(5)
    assert rng.choice(['only']) == 'only'
    with pytest.raises(ValueError):
        rng.choice([])


def test_as_rng_reuses_a_stream():
    rng = SeededRng(1)
    assert as_rng(rng) is rng
    assert as_rng(seed=4).seed == 4
