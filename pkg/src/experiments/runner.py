"""
    Experiment runner.

    An experiment is split into independent jobs (one per replicate, and per
    fugacity or tree kind where the experiment sweeps one). Every job gets a
    child of the experiment's seed sequence, fixed before any job runs, so
    results do not depend on the worker count. Jobs may run in a process
    pool; the coordinator alone writes the summary table and the ledger.
"""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..errors import ExperimentError, PartitionSamplerError
from ..generators.elections import VoteMode, assign_party, seat_count
from ..generators.io import GraphDocument, build_graph
from ..mcmc.flip import FlipChain, initial_partition
from ..mcmc.heatmap import heatmap_export
from ..models.chain_models import ChainConfig
from ..models.experiment_models import ExperimentConfig, ExperimentKind, RunRecord
from ..models.graph_models import Partition
from ..samplers.rng import SeededRng
from ..samplers.trees import draw_tree_partition
from ..utils.config_manager import ConfigManager

logger = logging.getLogger(__name__)

Job = Dict[str, Any]


def lambda_tag(lam: Fraction) -> str:
    """File-name-safe form of a fugacity, e.g. ``1_10`` for 1/10."""
    return str(lam).replace('/', '_')


def sweep_lambdas(values: List[Any], include_reciprocal: bool) -> List[Fraction]:
    """
        Fugacities of a sweep, optionally closed under reciprocals, ascending.

        Example:
            >>> sweep_lambdas(['1/2', 1], True)
            [Fraction(1, 2), Fraction(1, 1), Fraction(2, 1)]
    """
    lambdas = {Fraction(str(v)) for v in values}
    if include_reciprocal:
        lambdas |= {1 / lam for lam in lambdas}
    return sorted(lambdas)


@lru_cache(maxsize=8)
def _cached_graph(spec_json: str) -> GraphDocument:
    return build_graph(json.loads(spec_json))


def load_graph(spec: Dict[str, Any]) -> GraphDocument:
    return _cached_graph(json.dumps(spec, sort_keys=True))


def load_plan(path: str, node_count: int) -> Partition:
    """Read a starting plan: a JSON list of blocks per node, or ``{"assign": [...]}``."""
    with open(path, 'r') as f:
        data = json.load(f)
    assign = data['assign'] if isinstance(data, dict) else data
    if len(assign) != node_count:
        raise ValueError(f"plan {path} covers {len(assign)} nodes, graph has {node_count}")
    return Partition(max(assign) + 1, tuple(int(b) for b in assign))


def _job_rng(job: Job) -> SeededRng:
    entropy, key = job['seed']
    return SeededRng(sequence=np.random.SeedSequence(entropy, spawn_key=tuple(key)))


def _run_flip_job(job: Job) -> Dict[str, Any]:
    document = load_graph(job['graph'])
    g, layout = document.graph, document.layout
    params = dict(job['params'])
    init = params.pop('init', 'diag')
    chain_config = ChainConfig.from_config(
        job['app_config'], **{k: v for k, v in params.items() if k not in ('lambdas', 'include_reciprocal')}
    )
    if init in ('diag', 'horiz', 'vert'):
        if layout is None:
            raise ValueError(f"starting plan '{init}' needs a layout")
        initial = initial_partition(g, layout, init)
    else:
        initial = load_plan(init, g.node_count)
    chain = FlipChain(g, chain_config, initial, rng=_job_rng(job))
    state, stats = chain.run()

    out_dir = Path(job['run_dir']) / job['subdir']
    output = job['app_config'].get('output', {})
    written = heatmap_export(
        stats,
        layout,
        out_dir,
        max_gray=int(output.get('pgm_max_gray', 255)),
        float_format=output.get('csv_float_format', '%.6f'),
    )
    stride = chain_config.trace_stride or 1
    trace_path = out_dir / f"trace_lambda_{lambda_tag(chain_config.lambda_)}.csv"
    pd.DataFrame({
        'step': [stride * (i + 1) for i in range(len(stats.trace))],
        'cut_size': stats.trace,
    }).to_csv(trace_path, index=False)
    plan_path = out_dir / 'final_plan.json'
    plan_path.write_text(json.dumps({'k': chain_config.k, 'assign': list(state.assign)}))
    return {
        'summary': {
            'replicate': job['replicate'],
            'lambda': str(chain_config.lambda_),
            'steps': stats.steps,
            'accepted': stats.accepted,
            'mean_cut': stats.mean_cut(),
            'final_cut': state.cut_size,
        },
        'files': [str(p) for p in written + [trace_path, plan_path]],
    }


def _run_gate_job(job: Job) -> Dict[str, Any]:
    document = load_graph(job['graph'])
    g, layout = document.graph, document.layout
    params = job['params']
    sampler = job['app_config'].get('samplers', {})
    vote_modes = [VoteMode(mode) for mode in params.get('vote_modes', ['left', 'bottom'])]
    parties = {mode: assign_party(layout, mode, float(params.get('party_fraction', 0.6))) for mode in vote_modes}
    rows = []
    for index, rng in enumerate(_job_rng(job).spawn(int(params.get('samples', 1000)))):
        draw = draw_tree_partition(
            g,
            None,
            params.get('eps', sampler.get('eps', 0.05)),
            job['tree_kind'],
            rng,
            max_retries=int(params.get('max_retries', sampler.get('max_retries', 1000))),
            mode=params.get('tree_partition_mode', sampler.get('tree_partition_mode', 'redraw')),
        )
        row = {'sample': index, 'removed_edge': draw.edge, 'attempts': draw.attempts}
        for mode, party in parties.items():
            row[f'seats_{mode.value}'] = seat_count(g, draw.partition, party)
        rows.append(row)
    frame = pd.DataFrame(rows)
    out_dir = Path(job['run_dir']) / job['subdir']
    out_dir.mkdir(parents=True, exist_ok=True)
    raw_path = out_dir / f"samples_{job['tree_kind']}.csv"
    frame.to_csv(raw_path, index=False)
    summary = {'replicate': job['replicate'], 'tree_kind': job['tree_kind'], 'samples': len(rows)}
    for mode in vote_modes:
        summary[f'mean_seats_{mode.value}'] = float(frame[f'seats_{mode.value}'].mean()) if rows else 0.0
    return {'summary': summary, 'files': [str(raw_path)]}


_WORKERS: Dict[str, Callable[[Job], Dict[str, Any]]] = {
    'flip': _run_flip_job,
    'gate': _run_gate_job,
}


def run_job(job: Job) -> Dict[str, Any]:
    """Execute one job; module-level so a process pool can pickle it."""
    return _WORKERS[job['worker']](job)


class ExperimentRunner:
    """
        Runs experiments and keeps the append-only run ledger.

        Args:
            config: Full application configuration (``chain``, ``samplers``,
                ``experiments`` and ``output`` sections are read)
            threads: Worker processes (1 runs jobs in-process)

        Example:
            >>> runner = ExperimentRunner(config_manager.config)
            >>> record = runner.run(preset('gate-2', samples=50))
            >>> record.manifest[0]
            'config.json'
    """

    def __init__(self, config: Dict[str, Any], threads: int = 1):
        self.config = config
        self.threads = max(1, int(threads))
        self.ledger_name = config.get('experiments', {}).get('ledger', 'ledger.jsonl')

    def plan_jobs(self, experiment: ExperimentConfig, run_dir: Path, seed: int) -> List[Job]:
        """Expand an experiment into jobs with their seed streams fixed."""
        base = {
            'graph': experiment.graph,
            'app_config': self.config,
            'run_dir': str(run_dir),
        }
        specs: List[Tuple[str, Dict[str, Any]]] = []
        for replicate in range(experiment.replicates):
            if experiment.kind is ExperimentKind.FLIP_HEATMAP:
                specs.append(('flip', {'replicate': replicate, 'subdir': f'rep{replicate}',
                                       'params': dict(experiment.params)}))
            elif experiment.kind is ExperimentKind.LAMBDA_SWEEP:
                lambdas = sweep_lambdas(
                    experiment.params.get('lambdas', [1]), bool(experiment.params.get('include_reciprocal', True))
                )
                for lam in lambdas:
                    params = dict(experiment.params, **{'lambda': str(lam)})
                    specs.append(('flip', {'replicate': replicate, 'params': params,
                                           'subdir': f'rep{replicate}/lambda_{lambda_tag(lam)}'}))
            else:
                for tree_kind in experiment.params.get('tree_kinds', ['mst', 'ust']):
                    specs.append(('gate', {'replicate': replicate, 'subdir': f'rep{replicate}',
                                           'params': dict(experiment.params), 'tree_kind': tree_kind}))
        children = np.random.SeedSequence(seed).spawn(len(specs))
        return [
            dict(base, worker=worker, seed=(seed, list(child.spawn_key)), **spec)
            for (worker, spec), child in zip(specs, children)
        ]

    def _execute(self, jobs: List[Job]) -> List[Dict[str, Any]]:
        if self.threads == 1 or len(jobs) == 1:
            return [run_job(job) for job in jobs]
        with ProcessPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(run_job, jobs))

    def run(self, experiment: ExperimentConfig) -> RunRecord:
        """
            Run every job of an experiment and append its ledger entry.

            Writes ``summary.csv`` (one row per job, in job order) and the
            per-job raw outputs under ``<output_dir>/<experiment_id>/<hash>``.

            Raises:
                ExperimentError: Wrapping any failure with the experiment id
        """
        started = datetime.now(timezone.utc).isoformat()
        seed = experiment.seed
        if seed is None:
            seed = int(np.random.SeedSequence().entropy)
            logger.warning(f"No seed given for '{experiment.experiment_id}'; using {seed}")
        config_hash = experiment.config_hash()
        root = Path(experiment.output_dir)
        run_dir = root / experiment.experiment_id / config_hash[:12]
        try:
            run_dir.mkdir(parents=True, exist_ok=True)
            jobs = self.plan_jobs(experiment, run_dir, seed)
            logger.info(f"Running '{experiment.experiment_id}': {len(jobs)} jobs on {self.threads} workers")
            results = self._execute(jobs)
            summaries = [result['summary'] for result in results]
            summary_path = run_dir / 'summary.csv'
            float_format = self.config.get('output', {}).get('csv_float_format', '%.6f')
            pd.DataFrame(summaries).to_csv(summary_path, index=False, float_format=float_format)
            (run_dir / 'config.json').write_text(
                json.dumps(dict(experiment.to_dict(), seed=seed), sort_keys=True, indent=1) + '\n'
            )
        except (PartitionSamplerError, ValueError, KeyError, OSError) as e:
            raise ExperimentError(experiment.experiment_id, e) from e
        files = [summary_path, run_dir / 'config.json']
        files += [Path(f) for result in results for f in result['files']]
        manifest = sorted(str(path.relative_to(run_dir)) for path in files)
        record = RunRecord(
            experiment_id=experiment.experiment_id,
            config_hash=config_hash,
            seed=seed,
            started_at=started,
            finished_at=datetime.now(timezone.utc).isoformat(),
            summaries=summaries,
            manifest=manifest,
        )
        self.append_ledger(root, record)
        logger.info(f"'{experiment.experiment_id}' finished; outputs in {run_dir}")
        return record

    def append_ledger(self, root: Path, record: RunRecord) -> Path:
        root.mkdir(parents=True, exist_ok=True)
        path = root / self.ledger_name
        with open(path, 'a') as f:
            f.write(record.to_json() + '\n')
        return path


def read_ledger(path: Path) -> List[RunRecord]:
    records = []
    with open(path, 'r') as f:
        for line in f:
            if line.strip():
                records.append(RunRecord(**json.loads(line)))
    return records


def run_experiment(
    experiment: ExperimentConfig, config: Optional[Dict[str, Any]] = None, threads: int = 1
) -> RunRecord:
    """
        Run one experiment with the packaged configuration unless one is given.

        Raises:
            ExperimentError: Wrapping any module error with the experiment id
    """
    if config is None:
        config = ConfigManager().config
    return ExperimentRunner(config, threads).run(experiment)
