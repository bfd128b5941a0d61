import json
from fractions import Fraction

import pandas as pd
import pytest

from src.errors import ExperimentError, SchemaError
from src.experiments.presets import list_presets, preset
from src.experiments.runner import ExperimentRunner, lambda_tag, load_plan, read_ledger, sweep_lambdas
from src.models.experiment_models import ExperimentConfig, ExperimentKind


def tiny_flip(tmp_path, **changes):
    data = {
        'experiment_id': 'tiny',
        'kind': 'flip_heatmap',
        'graph': {'family': 'grid', 'n': 4},
        'params': {'lambda': '1/2', 'apd_percent': 50, 'steps': 500, 'init': 'diag', 'trace_stride': 50},
        'seed': 3,
        'output_dir': str(tmp_path / 'runs'),
    }
    data.update(changes)
    return ExperimentConfig.from_dict(data)


def test_lambda_helpers():
    assert lambda_tag(Fraction(1, 10)) == '1_10'
    assert lambda_tag(Fraction(2)) == '2'
    assert sweep_lambdas(['1/2', 1], True) == [Fraction(1, 2), Fraction(1), Fraction(2)]
    assert sweep_lambdas(['0.379'], False) == [Fraction(379, 1000)]


def test_load_plan(tmp_path):
    listed = tmp_path / 'list.json'
    listed.write_text('[0, 0, 1, 1]')
    assert load_plan(str(listed), 4).assign == (0, 0, 1, 1)
    wrapped = tmp_path / 'wrapped.json'
    wrapped.write_text(json.dumps({'assign': [1, 0, 0, 2]}))
    assert load_plan(str(wrapped), 4).k == 3
    with pytest.raises(ValueError):
        load_plan(str(listed), 5)


class TestExperimentConfig:
    @pytest.mark.parametrize('change, location', [
        ({'kind': None}, 'kind'),
        ({'kind': 'annealing'}, 'kind'),
        ({'graph': 'grid'}, 'graph'),
        ({'replicates': 0}, 'replicates'),
        ({'seed': -1}, 'seed'),
        ({'experiment_id': ''}, 'experiment_id'),
    ])
    def test_schema_errors(self, change, location):
        data = {'experiment_id': 'x', 'kind': 'flip_heatmap', 'graph': {'family': 'grid', 'n': 3}}
        data.update(change)
        data = {key: value for key, value in data.items() if value is not None}
        with pytest.raises(SchemaError) as excinfo:
            ExperimentConfig.from_dict(data)
        assert excinfo.value.location == location

    def test_hash_ignores_output_location(self, tmp_path):
        first = tiny_flip(tmp_path)
        moved = tiny_flip(tmp_path, output_dir=str(tmp_path / 'elsewhere'))
        reseeded = tiny_flip(tmp_path, seed=4)
        assert first.config_hash() == moved.config_hash()
        assert first.config_hash() != reseeded.config_hash()
        assert ExperimentConfig.from_dict(first.to_dict()) == first


class TestPresets:
    def test_names(self):
        names = list_presets()
        assert {'gate-0', 'gate-3', 'grid-40-flips', 'lambda-sweep'} <= set(names)
        assert names == sorted(names)

    def test_overrides(self, tmp_path):
        experiment = preset('grid-40-flips', steps=100, seed=7, output_dir=str(tmp_path))
        assert experiment.kind is ExperimentKind.FLIP_HEATMAP
        assert experiment.params['steps'] == 100
        assert (experiment.seed, experiment.output_dir) == (7, str(tmp_path))
        assert preset('gate-2', samples=10).params['samples'] == 10
        assert preset('kansas-substitute-flips', graph_file='plan.json').graph == {'file': 'plan.json'}

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            preset('grid-1000')


class TestExperimentRunner:
    def test_flip_run_manifest_and_ledger(self, tmp_path, app_config):
        runner = ExperimentRunner(app_config)
        record = runner.run(tiny_flip(tmp_path))
        assert record.manifest == [
            'config.json',
            'rep0/final_plan.json',
            'rep0/flips_edges.csv',
            'rep0/flips_flips.pgm',
            'rep0/flips_nodes.csv',
            'rep0/flips_occupancy.pgm',
            'rep0/trace_lambda_1_2.csv',
            'summary.csv',
        ]
        run_dir = tmp_path / 'runs' / 'tiny' / record.config_hash[:12]
        summary = pd.read_csv(run_dir / 'summary.csv')
        assert summary['steps'].tolist() == [500]
        assert len(pd.read_csv(run_dir / 'rep0' / 'trace_lambda_1_2.csv')) == 10
        plan = json.loads((run_dir / 'rep0' / 'final_plan.json').read_text())
        assert plan['k'] == 2 and len(plan['assign']) == 16

        ledger = read_ledger(tmp_path / 'runs' / 'ledger.jsonl')
        assert [r.experiment_id for r in ledger] == ['tiny']
        assert ledger[0].seed == 3

    def test_same_seed_same_results(self, tmp_path, app_config):
        runner = ExperimentRunner(app_config)
        first = runner.run(tiny_flip(tmp_path))
        second = runner.run(tiny_flip(tmp_path))
        assert first.summaries == second.summaries
        assert len(read_ledger(tmp_path / 'runs' / 'ledger.jsonl')) == 2

    def test_lambda_sweep_runs_each_fugacity(self, tmp_path, app_config):
        experiment = tiny_flip(
            tmp_path,
            kind='lambda_sweep',
            params={'lambdas': ['1/2'], 'include_reciprocal': True, 'steps': 200, 'init': 'horiz'},
            replicates=2,
        )
        record = ExperimentRunner(app_config).run(experiment)
        assert [(row['replicate'], row['lambda']) for row in record.summaries] == [
            (0, '1/2'), (0, '2'), (1, '1/2'), (1, '2')
        ]
        assert 'rep1/lambda_2/trace_lambda_2.csv' in record.manifest

    def test_seed_streams_do_not_depend_on_job_order(self, tmp_path, app_config):
        runner = ExperimentRunner(app_config)
        jobs = runner.plan_jobs(tiny_flip(tmp_path, replicates=3), tmp_path, 11)
        assert [job['seed'] for job in jobs] == [(11, [0]), (11, [1]), (11, [2])]

    def test_failures_carry_the_experiment_id(self, tmp_path, app_config):
        experiment = tiny_flip(
            tmp_path, params={'lambda': 1, 'steps': 10, 'init': str(tmp_path / 'missing.json')}
        )
        with pytest.raises(ExperimentError) as excinfo:
            ExperimentRunner(app_config).run(experiment)
        assert excinfo.value.experiment_id == 'tiny'
        assert isinstance(excinfo.value.cause, OSError)

    @pytest.mark.slow
    def test_gate_seats(self, tmp_path, app_config):
        experiment = preset('gate-3', samples=3, seed=1, output_dir=str(tmp_path / 'runs'))
        record = ExperimentRunner(app_config).run(experiment)
        assert [row['tree_kind'] for row in record.summaries] == ['mst', 'ust']
        assert all(row['samples'] == 3 for row in record.summaries)
        assert 'rep0/samples_ust.csv' in record.manifest
