"""
    Data models for the flip-walk Markov chain.

    This module defines the chain configuration, the mutable chain state with
    its cached cut size and block weights, single-step proposals and the
    per-run instrumentation (flip counts, occupancy sums, cut-edge counts and
    the strided cut trace).
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np


class ConnectivityMode(Enum):
    """
        How block connectivity is re-checked after a flip.

            - BFS: full search over the shrinking block
            - LOCAL: interleaved searches from the moved node's neighbors
            - VALIDATE: run both and require agreement
    """
    BFS = 'bfs'
    LOCAL = 'local'
    VALIDATE = 'validate'


@dataclass
class ChainConfig:
    """
        Parameters of one flip-walk run.

        Attributes:
            lambda_: Fugacity; the stationary law is proportional to
                ``lambda_ ** |cut|``
            apd_percent: Allowed population deviation in percent, or None
            steps: Number of steps
            seed: Seed of the run's random stream
            laziness: Probability of holding in place each step
            k: Number of blocks
            allow_empty_blocks: Permit a block to become empty
            trace_stride: Record ``|cut|`` every this many steps (0 disables)
            validate_every: Recompute caches from scratch every this many steps
            connectivity: Connectivity check strategy
            checkpoint_every: Steps between checkpoints (0 disables)

        Raises:
            ValueError: On a nonpositive fugacity, laziness outside [0, 1),
                negative steps or a negative APD
    """

    lambda_: Fraction = Fraction(1)
    apd_percent: Optional[Fraction] = None
    steps: int = 0
    seed: Optional[int] = None
    laziness: float = 0.5
    k: int = 2
    allow_empty_blocks: bool = False
    trace_stride: int = 1000
    validate_every: int = 1_000_000
    connectivity: ConnectivityMode = ConnectivityMode.LOCAL
    checkpoint_every: int = 0

    def __post_init__(self) -> None:
        self.lambda_ = Fraction(self.lambda_)
        if self.lambda_ <= 0:
            raise ValueError(f"lambda must be positive, got {self.lambda_}")
        if self.apd_percent is not None:
            self.apd_percent = Fraction(self.apd_percent)
            if self.apd_percent < 0:
                raise ValueError("apd_percent must be nonnegative")
        if not 0 <= self.laziness < 1:
            raise ValueError(f"laziness must lie in [0, 1), got {self.laziness}")
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        if self.k < 2:
            raise ValueError("the flip walk needs at least two blocks")
        if isinstance(self.connectivity, str):
            self.connectivity = ConnectivityMode(self.connectivity)

    @classmethod
    def from_config(cls, config: Dict[str, Any], **overrides: Any) -> "ChainConfig":
        """
            Build from the ``chain`` section of the application config.

            Args:
                config: Full application configuration
                **overrides: Values taking precedence (None values are ignored)
        """
        section = dict(config.get('chain', {}))
        section.update({key: value for key, value in overrides.items() if value is not None})
        lam = section.pop('lambda', section.pop('lambda_', 1))
        apd = section.get('apd_percent')
        return cls(
            lambda_=Fraction(str(lam)),
            apd_percent=Fraction(str(apd)) if apd is not None else None,
            steps=int(section.get('steps', 0)),
            seed=section.get('seed'),
            laziness=float(section.get('laziness', 0.5)),
            k=int(section.get('k', 2)),
            allow_empty_blocks=bool(section.get('allow_empty_blocks', False)),
            trace_stride=int(section.get('trace_stride', 1000)),
            validate_every=int(section.get('validate_every', 1_000_000)),
            connectivity=ConnectivityMode(section.get('connectivity', 'local')),
            checkpoint_every=int(section.get('checkpoint_every', 0)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lambda': str(self.lambda_),
            'apd_percent': str(self.apd_percent) if self.apd_percent is not None else None,
            'steps': self.steps,
            'seed': self.seed,
            'laziness': self.laziness,
            'k': self.k,
            'allow_empty_blocks': self.allow_empty_blocks,
            'trace_stride': self.trace_stride,
            'validate_every': self.validate_every,
            'connectivity': self.connectivity.value,
            'checkpoint_every': self.checkpoint_every,
        }


@dataclass
class ChainState:
    """
        Current partition with caches.

        Attributes:
            assign: Mutable block assignment per node
            cut_size: Cached ``|cut|``
            block_weights: Cached node-weight total per block
            block_sizes: Cached node count per block
    """

    assign: List[int]
    cut_size: int
    block_weights: List[int]
    block_sizes: List[int]

    def copy(self) -> "ChainState":
        return ChainState(
            list(self.assign), self.cut_size, list(self.block_weights), list(self.block_sizes)
        )


class ProposalKind(Enum):
    """Outcome classes of a single proposal."""
    HOLD = 'hold'
    MOVE = 'move'
    DISCONNECTS = 'disconnects'
    EMPTIES = 'empties'
    POPULATION = 'population'


@dataclass
class Proposal:
    """
        A proposed flip of ``node`` from ``source`` to ``target``.

        Only ``MOVE`` proposals are admissible; all other kinds are self-loops.
    """

    kind: ProposalKind
    node: int = -1
    source: int = -1
    target: int = -1
    delta_cut: int = 0

    @property
    def admissible(self) -> bool:
        return self.kind is ProposalKind.MOVE


@dataclass
class FlipStats:
    """
        Instrumentation gathered along a run.

        Attributes:
            flips: Accepted moves per node
            occupancy: Per node, block index summed over steps (for k = 2
                the number of steps spent in block 1)
            cut_counts: Per edge, number of steps the edge spent in the cut
            trace: Strided ``|cut|`` samples
            steps: Steps taken
            accepted: Accepted moves
            holds: Lazy holds
            rejected: Proposals rejected as inadmissible or by Metropolis
            watch_hits: Steps on which the run's watch predicate held
    """

    flips: np.ndarray
    occupancy: np.ndarray
    cut_counts: np.ndarray
    trace: List[int] = field(default_factory=list)
    steps: int = 0
    accepted: int = 0
    holds: int = 0
    rejected: int = 0
    watch_hits: int = 0

    @classmethod
    def zeros(cls, node_count: int, edge_count: int) -> "FlipStats":
        return cls(
            flips=np.zeros(node_count, dtype=np.int64),
            occupancy=np.zeros(node_count, dtype=np.int64),
            cut_counts=np.zeros(edge_count, dtype=np.int64),
        )

    def mean_cut(self) -> float:
        if self.steps == 0:
            return 0.0
        return float(self.cut_counts.sum()) / self.steps

    def average_block(self) -> np.ndarray:
        if self.steps == 0:
            return np.zeros_like(self.occupancy, dtype=float)
        return self.occupancy / self.steps

    def to_dict(self) -> Dict[str, Any]:
        return {
            'flips': self.flips.tolist(),
            'occupancy': self.occupancy.tolist(),
            'cut_counts': self.cut_counts.tolist(),
            'trace': list(self.trace),
            'steps': self.steps,
            'accepted': self.accepted,
            'holds': self.holds,
            'rejected': self.rejected,
            'watch_hits': self.watch_hits,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FlipStats":
        return cls(
            flips=np.asarray(data['flips'], dtype=np.int64),
            occupancy=np.asarray(data['occupancy'], dtype=np.int64),
            cut_counts=np.asarray(data['cut_counts'], dtype=np.int64),
            trace=list(data.get('trace', [])),
            steps=int(data.get('steps', 0)),
            accepted=int(data.get('accepted', 0)),
            holds=int(data.get('holds', 0)),
            rejected=int(data.get('rejected', 0)),
            watch_hits=int(data.get('watch_hits', 0)),
        )
