"""
    Named experiment configurations.

    Step and sample counts are the long-run defaults; callers shrink them
    with ``preset(..., steps=...)`` for quick runs.
"""

import copy
from typing import Any, Dict, List, Optional

from ..models.experiment_models import ExperimentConfig

CRITICAL_LAMBDA = '0.379'

_GATE_PARAMS: Dict[str, Any] = {
    'samples': 1000,
    'eps': 0.05,
    'tree_kinds': ['mst', 'ust'],
    'vote_modes': ['left', 'bottom'],
    'party_fraction': 0.6,
    'max_retries': 1000,
}

PRESETS: Dict[str, Dict[str, Any]] = {
    'grid-40-flips': {
        'kind': 'flip_heatmap',
        'graph': {'family': 'grid', 'n': 40},
        'params': {'lambda': '1/10', 'apd_percent': 10, 'steps': 10_000_000, 'init': 'diag'},
        'seed': 0,
    },
    'lambda-sweep': {
        'kind': 'lambda_sweep',
        'graph': {'family': 'grid', 'n': 20},
        'params': {
            'lambdas': ['1/10', CRITICAL_LAMBDA, '1'],
            'include_reciprocal': True,
            'apd_percent': 90,
            'steps': 10_000_000,
            'init': 'diag',
        },
        'seed': 0,
    },
    'franken-50': {
        'kind': 'flip_heatmap',
        'graph': {'family': 'franken', 'n': 50},
        'params': {'lambda': '1/2', 'apd_percent': 90, 'steps': 10_000_000, 'init': 'diag'},
        'seed': 0,
    },
    'kansas-substitute-flips': {
        'kind': 'flip_heatmap',
        'graph': {'file': 'kansas.json'},
        'params': {'lambda': CRITICAL_LAMBDA, 'apd_percent': 90, 'steps': 10_000_000, 'init': 'vert'},
        'seed': 0,
        'label': 'substitute: flip walk on an ingested graph file, not the original shapefile data',
    },
}
for _width in range(4):
    PRESETS[f'gate-{_width}'] = {
        'kind': 'gate_seats',
        'graph': {'family': 'gate', 'w': _width},
        'params': dict(_GATE_PARAMS),
        'seed': 0,
    }


def list_presets() -> List[str]:
    return sorted(PRESETS)


def preset(
    name: str,
    steps: Optional[int] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    output_dir: Optional[str] = None,
    graph_file: Optional[str] = None,
) -> ExperimentConfig:
    """
        Build a named experiment, optionally scaled down.

        Args:
            name: Preset name (see ``list_presets``)
            steps: Chain steps override
            samples: Sample count override for seat experiments
            seed: Seed override
            output_dir: Output root override
            graph_file: Graph file for presets that ingest one

        Raises:
            KeyError: On an unknown preset name

        Example:
            >>> preset('gate-2', samples=10).params['samples']
            10
    """
    if name not in PRESETS:
        raise KeyError(f"unknown preset '{name}' (known: {', '.join(list_presets())})")
    data = copy.deepcopy(PRESETS[name])
    data['experiment_id'] = name
    if steps is not None and 'steps' in data['params']:
        data['params']['steps'] = steps
    if samples is not None and 'samples' in data['params']:
        data['params']['samples'] = samples
    if seed is not None:
        data['seed'] = seed
    if output_dir is not None:
        data['output_dir'] = output_dir
    if graph_file is not None and 'file' in data['graph']:
        data['graph']['file'] = graph_file
    return ExperimentConfig.from_dict(data)
