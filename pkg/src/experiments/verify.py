"""
    Oracle-equivalence battery.

    Every check compares a formula, a dynamic program, a sampler or the
    chain against brute-force enumeration on desk-scale inputs and returns a
    ``CheckResult``. ``quick`` keeps the whole suite to a few minutes;
    ``full`` widens the inputs and the sample sizes.
"""

import json
import logging
import math
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from ..gadgets.bigons import doubled_star, restrict_doubled_star, star_fiber_size
from ..gadgets.rd import (
    build_rd,
    build_td,
    mixed_faces,
    restrict_td,
    sbl_count_rd,
    sbl_count_rd_recursive,
    sc_count_rd,
    sc_count_rd_recursive,
)
from ..generators.elections import VoteMode, assign_party, seat_count
from ..generators.lattices import (
    cycle_graph,
    gate_graph,
    grid,
    k4_plane,
    random_plane_graph,
    random_sp_graph,
    shaved_grid,
    theta_graph,
)
from ..graphs.core import canonical_unordered, cut
from ..graphs.duality import dual_of_partition, partition_of_dual
from ..graphs.plane import plane_dual
from ..mcmc.flip import FlipChain, flip_propose, initial_partition, make_state, metropolis_accept
from ..models.chain_models import ChainConfig
from ..models.experiment_models import CheckResult
from ..models.graph_models import MultiGraph, Partition
from ..oracle.enumeration import enum_connected_partitions, enum_simple_cycles, enum_simple_paths
from ..oracle.metagraph import (
    build_flip_metagraph,
    detailed_balance_holds,
    fiber_bottleneck,
    stationary_weights,
    transition_matrix,
)
from ..samplers.inductive import sample_balanced_uniform, sample_sc_uniform
from ..samplers.rng import SeededRng
from ..samplers.trees import draw_tree_partition, tree_partition
from ..spdp.cycles import count_simple_cycles
from ..spdp.remainder import balanced_count_remainder, sc_count_remainder
from ..spdp.tables import count_balanced

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
Check = Callable[[SeededRng, bool], CheckResult]

LEVELS = ('quick', 'full')


def _within(observed: int, draws: int, p: float, sigmas: float = 4.0) -> bool:
    if p in (0.0, 1.0):
        return observed == round(p * draws)
    return abs(observed / draws - p) <= sigmas * math.sqrt(p * (1 - p) / draws)


def check_rd_formulas(rng: SeededRng, full: bool) -> CheckResult:
    failures = []
    top = 3 if full else 2
    for d in range(top + 1):
        rd = build_rd(d)
        a0, b0, _ = rd.terminals
        cycles = len(enum_simple_cycles(rd.graph, max_edges=-1))
        paths = len(enum_simple_paths(rd.graph, a0, b0, max_edges=-1))
        if cycles != sc_count_rd(d) or cycles != sc_count_rd_recursive(d):
            failures.append(f"SC(R_{d}) = {cycles}, closed form {sc_count_rd(d)}")
        if paths != sbl_count_rd(d) or paths != sbl_count_rd_recursive(d):
            failures.append(f"SBL(R_{d}) = {paths}, closed form {sbl_count_rd(d)}")
    return CheckResult('rd_formulas', not failures, top + 1, '; '.join(failures) or f"d = 0..{top}")


def _duality_case(plane) -> Optional[str]:
    dual, mapping = plane_dual(plane)
    partitions = enum_connected_partitions(plane.graph, 2, max_states=-1)
    cycles = {frozenset(c) for c in enum_simple_cycles(dual.graph, max_edges=-1)}
    if len(partitions) != len(cycles):
        return f"{len(partitions)} partitions vs {len(cycles)} dual cycles"
    for p in partitions:
        image = frozenset(mapping[e] for e in dual_of_partition(plane, p))
        if image not in cycles:
            return f"cut of {p.assign} is not a dual cycle"
        back = canonical_unordered(partition_of_dual(plane, image))
        if back.assign != canonical_unordered(p).assign:
            return f"round trip changed {p.assign}"
    return None


def check_duality(rng: SeededRng, full: bool) -> CheckResult:
    cases = 20 if full else 5
    failures = []
    for index in range(cases):
        plane, _ = random_plane_graph(rng.generator, n=3, deletions=int(rng.integers(5)))
        problem = _duality_case(plane)
        if problem:
            failures.append(f"random #{index}: {problem}")
    sizes = range(3, 6 if full else 5)
    for n in sizes:
        problem = _duality_case(shaved_grid(n)[0])
        if problem:
            failures.append(f"shaved_grid({n}): {problem}")
    return CheckResult('duality', not failures, cases + len(sizes), '; '.join(failures))


def check_star_fibers(rng: SeededRng, full: bool) -> CheckResult:
    c4 = cycle_graph(4)[0].graph
    failures = []
    top = 3 if full else 2
    for d in range(1, top + 1):
        m = doubled_star(c4, d)
        derived = enum_connected_partitions(m.derived_graph, 2, allow_empty=True, max_states=-1)
        fibers = Counter(canonical_unordered(restrict_doubled_star(m, p)).assign for p in derived)
        for base, size in fibers.items():
            expected = star_fiber_size(m, Partition(2, base, allow_empty=True))
            if size != expected:
                failures.append(f"d={d} base {base}: fiber {size}, expected {expected}")
        mg = build_flip_metagraph(m.derived_graph, ordered=False, allow_empty=True, max_states=-1)
        start = canonical_unordered(Partition(2, (0, 0, 1, 1))).assign
        phi = fiber_bottleneck(
            mg, lambda p: canonical_unordered(restrict_doubled_star(m, p)).assign == start
        )
        bound = Fraction(d + 1, 2 ** (d + 1))
        if phi > bound:
            failures.append(f"d={d}: fiber bottleneck {phi} above {bound}")
    return CheckResult('star_fibers', not failures, top, '; '.join(failures))


def check_sp_cycle_counts(rng: SeededRng, full: bool) -> CheckResult:
    cases = 50 if full else 15
    failures = []
    for index in range(cases):
        g = random_sp_graph(rng.generator, 1 + int(rng.integers(14)))
        expected = len(enum_simple_cycles(g))
        got = count_simple_cycles(g)
        if got != expected:
            failures.append(f"#{index}: {got} vs {expected}")
    return CheckResult('sp_cycle_counts', not failures, cases, '; '.join(failures))


def _weighted(g: MultiGraph, rng: SeededRng) -> MultiGraph:
    return g.with_weights({v: 1 + rng.integers(6) for v in g.nodes()})


def check_balanced_counts(rng: SeededRng, full: bool) -> CheckResult:
    cases = 20 if full else 8
    failures = []
    for index in range(cases):
        g = _weighted(random_sp_graph(rng.generator, 2 + int(rng.integers(9))), rng)
        expected = len(enum_connected_partitions(g, 2, eps=0, weights=g.weights()))
        got = count_balanced(g)
        if got != expected:
            failures.append(f"#{index}: {got} vs {expected}")
    return CheckResult('balanced_counts', not failures, cases, '; '.join(failures))


def _split(rng: SeededRng, edges: Sequence[int]) -> Tuple[List[int], List[int]]:
    labels = [rng.integers(3) for _ in edges]
    j = [e for e, label in zip(edges, labels) if label == 1]
    j2 = [e for e, label in zip(edges, labels) if label == 2]
    return j, j2


def check_remainder(rng: SeededRng, full: bool) -> CheckResult:
    cases = 20 if full else 6
    failures = []
    for index in range(cases):
        g = random_sp_graph(rng.generator, 3 + int(rng.integers(5)))
        j, j2 = _split(rng, [e.id for e in g.edges])
        expected = sum(
            1 for c in enum_simple_cycles(g) if set(j) <= c and not set(j2) & c
        )
        for d in (g.node_count ** 2 + 1, None):
            got = sc_count_remainder(g, j, j2, d=d)
            if got != expected:
                failures.append(f"cycles #{index} (d={d or 'default'}): {got} vs {expected}")
        w = [1 + rng.integers(3) for _ in g.nodes()]
        brute = 0
        for p in enum_connected_partitions(g, 2, eps=0, weights=w):
            crossing = cut(g, p)
            if set(j) <= crossing and not set(j2) & crossing:
                brute += 1
        got = balanced_count_remainder(g, w, j, j2)
        if got != brute:
            failures.append(f"balanced #{index}: {got} vs {brute}")
    return CheckResult('remainder', not failures, cases, '; '.join(failures))


def _kernel_case(g: MultiGraph, lam: Fraction, proposals: int, rng: SeededRng) -> Optional[str]:
    mg = build_flip_metagraph(g, allow_empty=False)
    matrix = transition_matrix(mg, Fraction(1, 2), lam)
    if not detailed_balance_holds(matrix, stationary_weights(mg, lam)):
        return f"detailed balance fails at lambda={lam}"
    if any(sum(row) != 1 for row in matrix):
        return "kernel rows do not sum to 1"
    if not proposals:
        return None
    config = ChainConfig(lambda_=lam)
    for source, partition in enumerate(mg.states):
        counts: Counter = Counter()
        for _ in range(proposals):
            state = make_state(g, partition)
            proposal = flip_propose(g, state, config, rng)
            counts[mg.index[tuple(metropolis_accept(g, state, proposal, lam, rng).assign)]] += 1
        for target in range(mg.size):
            if not _within(counts[target], proposals, float(matrix[source][target])):
                return f"state {partition.assign} -> {mg.states[target].assign}: {counts[target]}/{proposals}"
    return None


def check_flip_kernel(rng: SeededRng, full: bool) -> CheckResult:
    graphs = {'C4': cycle_graph(4)[0].graph, 'grid3': grid(3, 3)[0].graph}
    proposals = {'C4': 20_000 if full else 2_000, 'grid3': 5_000 if full else 0}
    failures = []
    for name, g in graphs.items():
        for lam in (Fraction(1), Fraction(1, 2)):
            problem = _kernel_case(g, lam, proposals[name], rng)
            if problem:
                failures.append(f"{name}: {problem}")
    return CheckResult('flip_kernel', not failures, 2 * len(graphs), '; '.join(failures))


def check_samplers(rng: SeededRng, full: bool) -> CheckResult:
    draws = 20_000 if full else 600
    failures = []
    theta = theta_graph()
    counts = Counter(sample_sc_uniform(theta, child) for child in rng.spawn(draws))
    if len(counts) != 3 or not all(_within(c, draws, 1 / 3) for c in counts.values()):
        failures.append(f"theta cycles {sorted(counts.values())}")
    c6 = cycle_graph(6)[0].graph
    balanced = max(draws // 4, 150)
    plans = Counter(
        canonical_unordered(sample_balanced_uniform(c6, None, child)).assign for child in rng.spawn(balanced)
    )
    if len(plans) != 3 or not all(_within(c, balanced, 1 / 3) for c in plans.values()):
        failures.append(f"C6 balanced plans {sorted(plans.values())}")
    return CheckResult('samplers', not failures, draws + balanced, '; '.join(failures))


def check_determinism(rng: SeededRng, full: bool) -> CheckResult:
    g = grid(4, 4)[0].graph
    seed = rng.integers(2 ** 31)
    first = [tree_partition(g, None, 0, kind, SeededRng(seed)) for kind in ('ust', 'mst')]
    second = [tree_partition(g, None, 0, kind, SeededRng(seed)) for kind in ('ust', 'mst')]
    cycles = [sample_sc_uniform(theta_graph((1, 2, 3)), SeededRng(seed)) for _ in range(2)]
    same = first == second and cycles[0] == cycles[1]
    return CheckResult('determinism', same, 3, '' if same else 'repeated seeds gave different draws')


def metastable_depth(steps: int, tolerance: float = 0.01) -> int:
    """
        Smallest star width whose fiber bottleneck bound keeps ``steps`` steps in one fiber.

        Uses ``steps * (d + 1) / 2^(d + 1) <= tolerance``, the bound the
        star-fiber check verifies exactly on small widths.
    """
    d = 1
    while steps * (d + 1) > tolerance * 2 ** (d + 1):
        d += 1
    return d


def check_metastability(rng: SeededRng, full: bool) -> CheckResult:
    c4 = cycle_graph(4)[0].graph
    steps = 100_000 if full else 10_000
    d = metastable_depth(steps)
    m = doubled_star(c4, d)
    derived = m.derived_graph
    start = (0, 0, 1, 1)
    assign = list(start) + [0] * (derived.node_count - 4)
    for edge in c4.edges:
        for index, path in enumerate(m.segments[edge.id]):
            middle = derived.endpoints(path[0])[1]
            # cut edges start with their middle nodes split evenly between the two sides
            assign[middle] = start[edge.u] if index % 2 == 0 else start[edge.v]
    chain = FlipChain(
        derived,
        ChainConfig(steps=steps, trace_stride=0),
        Partition(2, tuple(assign)),
        rng=rng,
        watch=lambda a: tuple(a[:4]) == start,
    )
    _, stats = chain.run()
    share = stats.watch_hits / max(stats.steps, 1)
    return CheckResult('metastability', share > 0.99, steps, f"d={d}: {share:.4f} of steps in the starting fiber")


def check_phase_order(rng: SeededRng, full: bool) -> CheckResult:
    plane, layout = grid(20, 20)
    start = initial_partition(plane.graph, layout, 'diag')
    means = []
    for lam, child in zip(('1/10', '0.379', '1'), rng.spawn(3)):
        config = ChainConfig(lambda_=Fraction(lam), apd_percent=Fraction(90), steps=10_000_000, trace_stride=0)
        _, stats = FlipChain(plane.graph, config, start, rng=child).run()
        means.append(stats.mean_cut())
    increasing = all(a < b for a, b in zip(means, means[1:]))
    separated = means[-1] > 3 * means[0]
    return CheckResult(
        'phase_order', increasing and separated, 3, 'mean cuts ' + ', '.join(f"{m:.2f}" for m in means)
    )


def check_triangle_fibers(rng: SeededRng, full: bool) -> CheckResult:
    k4 = k4_plane()[0]
    m = build_td(k4, 1)
    derived = enum_connected_partitions(m.derived_graph, 2, allow_empty=True, max_states=-1)
    fibers = Counter(canonical_unordered(restrict_td(m, p)).assign for p in derived)
    failures = []
    for base, size in sorted(fibers.items()):
        bound = 5 ** mixed_faces(k4, Partition(2, base, allow_empty=True))
        if size < bound:
            failures.append(f"base {base}: fiber {size} below {bound}")
    return CheckResult('triangle_fibers', not failures, len(fibers), '; '.join(failures))


def check_gate_seats(rng: SeededRng, full: bool) -> CheckResult:
    plane, layout = gate_graph(2)
    g = plane.graph
    samples = 1000
    means: Dict[Tuple[str, VoteMode], float] = {}
    for kind, child in zip(('mst', 'ust'), rng.spawn(2)):
        parties = {mode: assign_party(layout, mode, 0.6) for mode in VoteMode}
        totals = Counter()
        for draw_rng in child.spawn(samples):
            partition = draw_tree_partition(g, None, '0.05', kind, draw_rng).partition
            for mode, party in parties.items():
                totals[mode] += seat_count(g, partition, party)
        for mode in VoteMode:
            means[kind, mode] = totals[mode] / samples
    left_mst, left_ust = means['mst', VoteMode.LEFT], means['ust', VoteMode.LEFT]
    ok = (
        1.00 <= left_mst <= 1.10
        and 1.10 <= left_ust <= 1.35
        and left_ust - left_mst > 0.05
        and means['mst', VoteMode.BOTTOM] > means['ust', VoteMode.BOTTOM]
    )
    detail = ', '.join(f"{kind}/{mode.value} {mean:.3f}" for (kind, mode), mean in means.items())
    return CheckResult('gate_seats', ok, 2 * samples, detail)


QUICK_CHECKS: List[Check] = [
    check_rd_formulas,
    check_duality,
    check_star_fibers,
    check_sp_cycle_counts,
    check_balanced_counts,
    check_remainder,
    check_flip_kernel,
    check_samplers,
    check_determinism,
    check_metastability,
]
FULL_ONLY_CHECKS: List[Check] = [check_phase_order, check_triangle_fibers, check_gate_seats]


def verify_suite(level: str = 'quick', seed: int = 0) -> List[CheckResult]:
    """
        Run the battery.

        A check that raises is reported as failed with the error as detail.

        Args:
            level: ``quick`` or ``full``
            seed: Root seed; each check gets its own child stream

        Raises:
            ValueError: On an unknown level
    """
    if level not in LEVELS:
        raise ValueError(f"unknown verify level '{level}' (expected quick or full)")
    full = level == 'full'
    checks = QUICK_CHECKS + (FULL_ONLY_CHECKS if full else [])
    results = []
    for check, child in zip(checks, SeededRng(seed).spawn(len(checks))):
        began = time.perf_counter()
        try:
            result = check(child, full)
        except Exception as e:
            logger.exception(f"{check.__name__} raised")
            result = CheckResult(check.__name__.replace('check_', ''), False, 0, f"{type(e).__name__}: {e}")
        logger.info(
            f"{result.name}: {'ok' if result.passed else 'FAILED'} "
            f"({result.cases} cases, {time.perf_counter() - began:.1f}s)"
        )
        results.append(result)
    return results


def write_report(results: Sequence[CheckResult], path: PathLike, level: str, seed: int) -> Path:
    """JSON report with one entry per check."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    report: Dict[str, object] = {
        'level': level,
        'seed': seed,
        'passed': all(r.passed for r in results),
        'checks': [
            {'name': r.name, 'passed': r.passed, 'cases': r.cases, 'detail': r.detail} for r in results
        ],
    }
    target.write_text(json.dumps(report, indent=1) + '\n')
    return target
