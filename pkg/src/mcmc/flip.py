"""
    The flip walk on connected k-partitions with Metropolis fugacity weighting.

    Each step holds with probability ``laziness``; otherwise a uniform node
    proposes to move to another block (the other block when ``k == 2``, a
    uniform adjacent block otherwise). A move that disconnects or empties a
    block, or leaves the population window, is a self-loop. Admissible moves
    are accepted with probability ``min(1, lambda ** delta_cut)`` so that the
    stationary law is proportional to ``lambda ** |cut|``.

    Instrumentation is accumulated lazily: a node's occupancy and an edge's
    time in the cut are credited only when they change, and flushed before
    anyone reads the stats.
"""

import json
import logging
from collections import deque
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import InadmissibleStateError
from ..graphs.core import cut, is_connected_partition, to_fraction
from ..models.chain_models import (
    ChainConfig,
    ChainState,
    ConnectivityMode,
    FlipStats,
    Proposal,
    ProposalKind,
)
from ..models.graph_models import Layout, MultiGraph, Partition
from ..samplers.rng import SeededRng

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
Watch = Callable[[Sequence[int]], bool]


def make_state(g: MultiGraph, partition: Partition) -> ChainState:
    """Chain state with caches computed from scratch."""
    weights = [0] * partition.k
    sizes = [0] * partition.k
    for node, block in enumerate(partition.assign):
        weights[block] += g.weight(node)
        sizes[block] += 1
    return ChainState(list(partition.assign), len(cut(g, partition)), weights, sizes)


def apd_window(g: MultiGraph, config: ChainConfig) -> Optional[Tuple[Fraction, Fraction]]:
    """
        Allowed block weight range ``ideal * (1 -+ apd/100)``, or None without a window.

        Example:
            >>> apd_window(path4, ChainConfig(apd_percent=50))
            (Fraction(1, 1), Fraction(3, 1))
    """
    if config.apd_percent is None:
        return None
    ideal = Fraction(g.total_weight(), config.k)
    slack = config.apd_percent / 100
    return ideal * (1 - slack), ideal * (1 + slack)


def block_degrees(g: MultiGraph, assign: Sequence[int], node: int, k: int) -> List[int]:
    """Edges from ``node`` into each block, self-loops excluded."""
    degrees = [0] * k
    for other in g.neighbor_lists[node]:
        degrees[assign[other]] += 1
    return degrees


def _remains_connected_bfs(g: MultiGraph, assign: Sequence[int], node: int, size: int) -> bool:
    block = assign[node]
    neighbors = g.neighbor_lists
    start = next((o for o in neighbors[node] if assign[o] == block and o != node), None)
    if start is None:
        return size <= 1
    seen = {node, start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for other in neighbors[current]:
            if other not in seen and assign[other] == block:
                seen.add(other)
                queue.append(other)
    return len(seen) == size


def _remains_connected_local(g: MultiGraph, assign: Sequence[int], node: int, size: int) -> bool:
    """
        Interleaved searches from the moved node's neighbors in its block.

        Stops as soon as every search has met (connected) or one search runs
        out of nodes before meeting the rest (disconnected). The cost is
        bounded by the smaller side of a split.
    """
    block = assign[node]
    neighbors = g.neighbor_lists
    seeds = sorted({o for o in neighbors[node] if assign[o] == block and o != node})
    if len(seeds) <= 1:
        return bool(seeds) or size <= 1
    owner: Dict[int, int] = {node: -1}
    parent = list(range(len(seeds)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    groups = len(seeds)
    frontiers = []
    for index, seed in enumerate(seeds):
        owner[seed] = index
        frontiers.append(deque([seed]))
    while True:
        for index, frontier in enumerate(frontiers):
            if not frontier:
                continue
            current = frontier.popleft()
            for other in neighbors[current]:
                if assign[other] != block or other == node:
                    continue
                if other not in owner:
                    owner[other] = index
                    frontier.append(other)
                    continue
                a, b = find(owner[other]), find(index)
                if a != b:
                    parent[a] = b
                    groups -= 1
                    if groups == 1:
                        return True
            if not frontier:
                root = find(index)
                if all(not frontiers[j] for j in range(len(seeds)) if find(j) == root):
                    return False


def remains_connected(
    g: MultiGraph, assign: Sequence[int], node: int, size: int, mode: ConnectivityMode
) -> bool:
    """
        Whether ``node``'s block stays connected once ``node`` leaves it.

        Args:
            size: Current size of ``node``'s block

        Raises:
            RuntimeError: In validate mode, when the two checks disagree
    """
    if mode is ConnectivityMode.BFS:
        return _remains_connected_bfs(g, assign, node, size)
    if mode is ConnectivityMode.LOCAL:
        return _remains_connected_local(g, assign, node, size)
    reference = _remains_connected_bfs(g, assign, node, size)
    local = _remains_connected_local(g, assign, node, size)
    if reference != local:
        raise RuntimeError(f"connectivity checks disagree at node {node}: bfs={reference}, local={local}")
    return reference


def flip_propose(g: MultiGraph, state: ChainState, config: ChainConfig, rng: SeededRng) -> Proposal:
    """
        One proposal of the lazy flip walk.

        Args:
            g: Base graph
            state: Current state (not modified)
            config: Chain parameters
            rng: Random stream

        Returns:
            A ``MOVE`` proposal with its cut change, or a self-loop kind
    """
    if rng.bernoulli(to_fraction(config.laziness)):
        return Proposal(ProposalKind.HOLD)
    node = rng.integers(g.node_count)
    source = state.assign[node]
    degrees = block_degrees(g, state.assign, node, config.k)
    if config.k == 2:
        target = 1 - source
    else:
        adjacent = [b for b in range(config.k) if b != source and degrees[b] > 0]
        if config.allow_empty_blocks:
            adjacent += [b for b in range(config.k) if state.block_sizes[b] == 0 and b != source]
        if not adjacent:
            return Proposal(ProposalKind.DISCONNECTS, node, source)
        target = rng.choice(adjacent)
    delta = degrees[source] - degrees[target]
    if state.block_sizes[source] == 1 and not config.allow_empty_blocks:
        return Proposal(ProposalKind.EMPTIES, node, source, target, delta)
    if state.block_sizes[target] > 0 and degrees[target] == 0:
        return Proposal(ProposalKind.DISCONNECTS, node, source, target, delta)
    window = apd_window(g, config)
    if window is not None:
        low, high = window
        moved = g.weight(node)
        for weight in (state.block_weights[source] - moved, state.block_weights[target] + moved):
            if not low <= weight <= high:
                return Proposal(ProposalKind.POPULATION, node, source, target, delta)
    if not remains_connected(g, state.assign, node, state.block_sizes[source], config.connectivity):
        return Proposal(ProposalKind.DISCONNECTS, node, source, target, delta)
    return Proposal(ProposalKind.MOVE, node, source, target, delta)


def acceptance_probability(lam: Fraction, delta_cut: int) -> Fraction:
    """
        ``min(1, lam ** delta_cut)``.

        Example:
            >>> acceptance_probability(Fraction(1, 2), 1)
            Fraction(1, 2)
    """
    return min(Fraction(1), Fraction(lam) ** delta_cut)


def apply_move(g: MultiGraph, state: ChainState, proposal: Proposal) -> None:
    node, source, target = proposal.node, proposal.source, proposal.target
    state.assign[node] = target
    state.cut_size += proposal.delta_cut
    state.block_weights[source] -= g.weight(node)
    state.block_weights[target] += g.weight(node)
    state.block_sizes[source] -= 1
    state.block_sizes[target] += 1


def metropolis_accept(
    g: MultiGraph, state: ChainState, proposal: Proposal, lam: Fraction, rng: SeededRng
) -> ChainState:
    """
        Apply an admissible proposal with probability ``min(1, lam ** delta_cut)``.

        Self-loop proposals leave the state as it is.

        Raises:
            ValueError: If ``lam <= 0``
    """
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if not proposal.admissible:
        return state
    if rng.bernoulli(acceptance_probability(lam, proposal.delta_cut)):
        apply_move(g, state, proposal)
    return state


class FlipChain:
    """
        A running flip walk with its instrumentation.

        Args:
            g: Base graph
            config: Chain parameters
            initial: Starting partition, admissible under ``config``
            rng: Random stream (None seeds one from ``config.seed``)
            watch: Optional predicate on the assignment; steps where it holds
                are counted in ``stats.watch_hits``

        Raises:
            InadmissibleStateError: If the initial partition is not admissible

        Example:
            >>> chain = FlipChain(c4, ChainConfig(steps=100, seed=1), Partition(2, (0, 0, 1, 1)))
            >>> state, stats = chain.run()
            >>> stats.steps
            100
    """

    def __init__(
        self,
        g: MultiGraph,
        config: ChainConfig,
        initial: Partition,
        rng: Optional[SeededRng] = None,
        watch: Optional[Watch] = None,
    ):
        self.g = g
        self.config = config
        self.rng = rng if rng is not None else SeededRng(config.seed)
        self.watch = watch
        if initial.k != config.k:
            raise InadmissibleStateError(f"initial partition has {initial.k} blocks, config wants {config.k}")
        self.state = make_state(g, initial)
        self._check_admissible(self.state.assign)
        self.stats = FlipStats.zeros(g.node_count, g.number_of_edges)
        self.steps_done = 0
        self._incident: List[List[int]] = [[] for _ in range(g.node_count)]
        for edge in g.edges:
            if edge.u != edge.v:
                self._incident[edge.u].append(edge.id)
                self._incident[edge.v].append(edge.id)
        self._node_since = np.zeros(g.node_count, dtype=np.int64)
        self._edge_since = np.zeros(g.number_of_edges, dtype=np.int64)
        self._in_cut = np.array(
            [self.state.assign[e.u] != self.state.assign[e.v] for e in g.edges], dtype=bool
        )

    def _check_admissible(self, assign: Sequence[int]) -> None:
        partition = Partition(self.config.k, tuple(assign), allow_empty=True)
        if partition.has_empty_block() and not self.config.allow_empty_blocks:
            raise InadmissibleStateError("a block is empty and empty blocks are not allowed")
        if not is_connected_partition(self.g, partition):
            raise InadmissibleStateError("a block is disconnected")
        window = apd_window(self.g, self.config)
        if window is not None:
            low, high = window
            weights = make_state(self.g, partition).block_weights
            if any(not low <= weight <= high for weight in weights):
                raise InadmissibleStateError(f"block weights {weights} leave the window [{low}, {high}]")

    def validate(self) -> None:
        """
            Recompute every cache from scratch and re-check admissibility.

            Raises:
                InadmissibleStateError: On a stale cache or an inadmissible state
        """
        fresh = make_state(self.g, Partition(self.config.k, tuple(self.state.assign), allow_empty=True))
        if (fresh.cut_size, fresh.block_weights, fresh.block_sizes) != (
            self.state.cut_size, self.state.block_weights, self.state.block_sizes
        ):
            raise InadmissibleStateError(
                f"stale caches after {self.steps_done} steps: cut {self.state.cut_size} vs {fresh.cut_size}"
            )
        self._check_admissible(self.state.assign)

    def _credit(self, node: int) -> None:
        elapsed = self.steps_done - self._node_since[node]
        self.stats.occupancy[node] += elapsed * self.state.assign[node]
        self._node_since[node] = self.steps_done
        for edge_id in self._incident[node]:
            if self._in_cut[edge_id]:
                self.stats.cut_counts[edge_id] += self.steps_done - self._edge_since[edge_id]
            self._edge_since[edge_id] = self.steps_done

    def flush(self) -> None:
        """Bring occupancy and cut counts up to the current step."""
        assign = np.asarray(self.state.assign, dtype=np.int64)
        self.stats.occupancy += (self.steps_done - self._node_since) * assign
        self._node_since[:] = self.steps_done
        self.stats.cut_counts += np.where(self._in_cut, self.steps_done - self._edge_since, 0)
        self._edge_since[:] = self.steps_done

    def step(self) -> bool:
        """One step; True when the state moved."""
        proposal = flip_propose(self.g, self.state, self.config, self.rng)
        moved = False
        if proposal.kind is ProposalKind.HOLD:
            self.stats.holds += 1
        elif not proposal.admissible:
            self.stats.rejected += 1
        elif self.rng.bernoulli(acceptance_probability(self.config.lambda_, proposal.delta_cut)):
            # stats are credited for the steps spent in the old block
            self._credit(proposal.node)
            apply_move(self.g, self.state, proposal)
            for edge_id in self._incident[proposal.node]:
                e = self.g.edges[edge_id]
                self._in_cut[edge_id] = self.state.assign[e.u] != self.state.assign[e.v]
            self.stats.flips[proposal.node] += 1
            self.stats.accepted += 1
            moved = True
        else:
            self.stats.rejected += 1
        self.steps_done += 1
        self.stats.steps += 1
        if self.watch is not None and self.watch(self.state.assign):
            self.stats.watch_hits += 1
        if self.config.trace_stride and self.steps_done % self.config.trace_stride == 0:
            self.stats.trace.append(self.state.cut_size)
        if self.config.validate_every and self.steps_done % self.config.validate_every == 0:
            self.validate()
        return moved

    def run(
        self,
        steps: Optional[int] = None,
        checkpoint_path: Optional[PathLike] = None,
        on_step: Optional[Callable[[int], None]] = None,
    ) -> Tuple[ChainState, FlipStats]:
        """
            Advance the chain.

            Args:
                steps: Steps to take (None runs to ``config.steps``)
                checkpoint_path: Where to write checkpoints every
                    ``config.checkpoint_every`` steps
                on_step: Progress callback receiving the number of steps done

            Returns:
                Tuple of (final state, flushed stats)
        """
        remaining = self.config.steps - self.steps_done if steps is None else steps
        for _ in range(max(remaining, 0)):
            self.step()
            if on_step is not None:
                on_step(self.steps_done)
            every = self.config.checkpoint_every
            if checkpoint_path is not None and every and self.steps_done % every == 0:
                self.save_checkpoint(checkpoint_path)
        self.flush()
        logger.debug(
            f"Flip walk: {self.steps_done} steps, {self.stats.accepted} moves, cut {self.state.cut_size}"
        )
        return self.state, self.stats

    def partition(self) -> Partition:
        return Partition(self.config.k, tuple(self.state.assign), allow_empty=True)

    def checkpoint(self) -> Dict[str, Any]:
        self.flush()
        return {
            'assign': list(self.state.assign),
            'steps_done': self.steps_done,
            'stats': self.stats.to_dict(),
            'rng_state': self.rng.get_state(),
            'config': self.config.to_dict(),
        }

    def save_checkpoint(self, path: PathLike) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(self.checkpoint()))
        logger.debug(f"Checkpoint after {self.steps_done} steps written to {target}")
        return target

    @classmethod
    def from_checkpoint(
        cls, g: MultiGraph, data: Dict[str, Any], watch: Optional[Watch] = None
    ) -> "FlipChain":
        """Resume a chain exactly where ``checkpoint`` left it."""
        config = ChainConfig.from_config({'chain': data['config']})
        chain = cls(g, config, Partition(config.k, tuple(data['assign']), allow_empty=True), watch=watch)
        chain.rng.set_state(data['rng_state'])
        chain.stats = FlipStats.from_dict(data['stats'])
        chain.steps_done = int(data['steps_done'])
        chain._node_since[:] = chain.steps_done
        chain._edge_since[:] = chain.steps_done
        return chain

    @classmethod
    def load_checkpoint(cls, g: MultiGraph, path: PathLike, watch: Optional[Watch] = None) -> "FlipChain":
        return cls.from_checkpoint(g, json.loads(Path(path).read_text()), watch)


def run_chain(
    g: MultiGraph,
    config: ChainConfig,
    initial: Partition,
    rng: Optional[SeededRng] = None,
    watch: Optional[Watch] = None,
) -> Tuple[ChainState, FlipStats]:
    """
        Run a flip walk for ``config.steps`` steps.

        Raises:
            InadmissibleStateError: If ``initial`` is not admissible
    """
    return FlipChain(g, config, initial, rng, watch).run()


def initial_partition(g: MultiGraph, layout: Layout, mode: str) -> Partition:
    """
        Starting plan split by position.

        ``vert`` puts the left half of the nodes in block 0, ``horiz`` the
        bottom half and ``diag`` the upper-left half (below the line
        ``x = y`` in score ``x - y``). Ties are broken by node id.

        Raises:
            ValueError: On an unknown mode or a layout missing nodes
            InadmissibleStateError: If either half is disconnected
    """
    if not layout.covers(g.node_count):
        raise ValueError("layout does not cover every node")
    scores = {
        'vert': lambda x, y: x,
        'horiz': lambda x, y: y,
        'diag': lambda x, y: x - y,
    }
    if mode not in scores:
        raise ValueError(f"unknown initial partition mode '{mode}'")
    score = scores[mode]
    order = sorted(g.nodes(), key=lambda v: (score(*layout.coords[v]), v))
    assign = [1] * g.node_count
    for node in order[: g.node_count // 2]:
        assign[node] = 0
    partition = Partition(2, tuple(assign))
    if not is_connected_partition(g, partition):
        raise InadmissibleStateError(f"the '{mode}' split of this layout is disconnected")
    return partition
