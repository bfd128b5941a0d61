"""
    Seeded, splittable random streams.

    Every sampler and chain owns one ``SeededRng``. Streams are numpy PCG64
    generators fed by a ``SeedSequence``, so a seed reproduces the same draws
    on every platform and ``spawn`` hands out independent child streams for
    batch and parallel work.
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, TypeVar

import numpy as np

T = TypeVar('T')

_WORD = 1 << 64


class SeededRng:
    """
        Random stream with exact Bernoulli draws for rational probabilities.

        Args:
            seed: Root seed (None draws fresh OS entropy)
            sequence: Seed sequence to use instead of ``seed`` (used by ``spawn``)

        Example:
            >>> a, b = SeededRng(7), SeededRng(7)
            >>> a.integers(100) == b.integers(100)
            True
    """

    def __init__(self, seed: Optional[int] = None, sequence: Optional[np.random.SeedSequence] = None):
        self.sequence = sequence if sequence is not None else np.random.SeedSequence(seed)
        self.generator = np.random.Generator(np.random.PCG64(self.sequence))

    @property
    def seed(self) -> Optional[int]:
        entropy = self.sequence.entropy
        return int(entropy) if isinstance(entropy, int) else None

    def spawn(self, count: int) -> List["SeededRng"]:
        return [SeededRng(sequence=child) for child in self.sequence.spawn(count)]

    def random(self) -> float:
        return float(self.generator.random())

    def integers(self, high: int) -> int:
        """Uniform integer in ``[0, high)``."""
        return int(self.generator.integers(high))

    def choice(self, items: Sequence[T]) -> T:
        if not items:
            raise ValueError("cannot choose from an empty sequence")
        return items[self.integers(len(items))]

    def bernoulli(self, p: Fraction) -> bool:
        """
            Exact coin with heads probability ``p``.

            Compares the binary expansion of a uniform variate against ``p``
            64 bits at a time until the two differ.

            Raises:
                ValueError: If ``p`` lies outside [0, 1]
        """
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise ValueError(f"probability {p} outside [0, 1]")
        if p == 0 or p == 1:
            return p == 1
        while True:
            word = int(self.generator.bit_generator.random_raw())
            scaled = p * _WORD
            whole = scaled.numerator // scaled.denominator
            if word != whole:
                return word < whole
            p = scaled - whole

    def uniform_weights(self, count: int) -> np.ndarray:
        return self.generator.random(count)

    def get_state(self) -> Dict[str, Any]:
        """JSON-serializable generator state for checkpoints."""
        return dict(self.generator.bit_generator.state)

    def set_state(self, state: Dict[str, Any]) -> None:
        self.generator.bit_generator.state = state


def as_rng(rng: Optional[SeededRng] = None, seed: Optional[int] = None) -> SeededRng:
    return rng if rng is not None else SeededRng(seed)
