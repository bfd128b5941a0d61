"""
    Data models for experiments, run records and verification results.
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from ..errors import SchemaError


class ExperimentKind(Enum):
    """
        Experiment families the runner knows how to execute.

            - FLIP_HEATMAP: one long flip walk with flip-count and occupancy fields
            - LAMBDA_SWEEP: flip walks over a list of fugacities (and their reciprocals)
            - GATE_SEATS: tree-partition seat shares on gate graphs
    """
    FLIP_HEATMAP = 'flip_heatmap'
    LAMBDA_SWEEP = 'lambda_sweep'
    GATE_SEATS = 'gate_seats'


@dataclass
class ExperimentConfig:
    """
        Fully serializable description of an experiment.

        Attributes:
            experiment_id: Name used for the output directory and ledger
            kind: Experiment family
            graph: Graph specification, e.g. ``{"family": "grid", "n": 40}``
                or ``{"file": "plan.json"}``
            params: Chain or sampler parameters
            replicates: Independent repetitions
            seed: Root seed; drawn from OS entropy and recorded when absent
            output_dir: Root directory for outputs
            label: Free-form note (e.g. marking a substitute dataset)
    """

    experiment_id: str
    kind: ExperimentKind
    graph: Dict[str, Any]
    params: Dict[str, Any] = field(default_factory=dict)
    replicates: int = 1
    seed: Optional[int] = None
    output_dir: str = 'runs'
    label: str = ''

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        """
            Validate and build a config from parsed JSON.

            Raises:
                SchemaError: With the location of the first violation
        """
        if not isinstance(data, dict):
            raise SchemaError('$', 'experiment config must be an object')
        for key in ('experiment_id', 'kind', 'graph'):
            if key not in data:
                raise SchemaError(key, 'required field missing')
        if not isinstance(data['experiment_id'], str) or not data['experiment_id']:
            raise SchemaError('experiment_id', 'must be a nonempty string')
        try:
            kind = ExperimentKind(data['kind'])
        except ValueError:
            choices = ', '.join(k.value for k in ExperimentKind)
            raise SchemaError('kind', f"unknown kind '{data['kind']}' (expected one of {choices})")
        if not isinstance(data['graph'], dict):
            raise SchemaError('graph', 'must be an object')
        params = data.get('params', {})
        if not isinstance(params, dict):
            raise SchemaError('params', 'must be an object')
        replicates = data.get('replicates', 1)
        if not isinstance(replicates, int) or replicates < 1:
            raise SchemaError('replicates', 'must be a positive integer')
        seed = data.get('seed')
        if seed is not None and (not isinstance(seed, int) or seed < 0):
            raise SchemaError('seed', 'must be a nonnegative integer')
        return cls(
            experiment_id=data['experiment_id'],
            kind=kind,
            graph=dict(data['graph']),
            params=dict(params),
            replicates=replicates,
            seed=seed,
            output_dir=str(data.get('output_dir', 'runs')),
            label=str(data.get('label', '')),
        )

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['kind'] = self.kind.value
        return data

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON form, excluding the output location."""
        data = self.to_dict()
        data.pop('output_dir')
        canonical = json.dumps(data, sort_keys=True, separators=(',', ':'), default=str)
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


@dataclass
class RunRecord:
    """
        One ledger entry.

        Attributes:
            experiment_id: Experiment name
            config_hash: Hash of the config that produced the run
            seed: Seed actually used
            started_at: ISO timestamp
            finished_at: ISO timestamp
            summaries: Per-replicate summary statistics
            manifest: Output files, relative to the run directory
    """

    experiment_id: str
    config_hash: str
    seed: int
    started_at: str
    finished_at: str
    summaries: List[Dict[str, Any]] = field(default_factory=list)
    manifest: List[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, default=str)


@dataclass
class CheckResult:
    """
        Outcome of one verification check.

        Attributes:
            name: Check identifier
            passed: Whether every case held
            cases: Number of cases examined
            detail: Short human-readable summary
    """

    name: str
    passed: bool
    cases: int = 0
    detail: str = ''
