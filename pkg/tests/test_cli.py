import json

import pytest
from click.testing import CliRunner

from src.cli import cli
from src.models.experiment_models import CheckResult


@pytest.fixture
def runner(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return CliRunner()


def build(runner, *args):
    result = runner.invoke(cli, ['build-graph', *args])
    assert result.exit_code == 0, result.output
    return result


def test_build_graph(runner, tmp_path):
    result = build(runner, 'grid', '--n', '3', '--output', 'grid.json', '--dot')
    assert '9 nodes, 12 edges' in result.output
    assert (tmp_path / 'grid.json').exists()
    assert (tmp_path / 'grid.dot').read_text().startswith('graph')


def test_counts(runner):
    build(runner, 'theta', '--output', 'theta.json')
    build(runner, 'cycle', '--n', '6', '--output', 'c6.json')
    assert 'sc: 3' in runner.invoke(cli, ['count', 'sc', '--graph', 'theta.json']).output
    assert 'sc: 3' in runner.invoke(cli, ['count', 'sc', '--graph', 'theta.json', '--brute']).output
    assert 'balanced: 3' in runner.invoke(cli, ['count', 'balanced', '--graph', 'c6.json']).output
    assert 'marginal: 2' in runner.invoke(cli, ['count', 'marginal', '--graph', 'theta.json', '--j', '0']).output


def test_count_rejects_bad_ids(runner):
    build(runner, 'theta', '--output', 'theta.json')
    result = runner.invoke(cli, ['count', 'marginal', '--graph', 'theta.json', '--j', '0,x'])
    assert result.exit_code == 2


def test_sample_cycles(runner, tmp_path):
    build(runner, 'theta', '--output', 'theta.json')
    args = ['--seed', '1', 'sample', 'sc', '--graph', 'theta.json', '--count', '5', '--output', 'cycles.jsonl']
    assert runner.invoke(cli, args).exit_code == 0
    first = (tmp_path / 'cycles.jsonl').read_text()
    assert runner.invoke(cli, args).exit_code == 0
    assert (tmp_path / 'cycles.jsonl').read_text() == first
    records = [json.loads(line) for line in first.splitlines()]
    assert [r['index'] for r in records] == [0, 1, 2, 3, 4]
    assert all(set(r['edges']) in ({0, 1, 2}, {0, 3, 4}, {1, 2, 3, 4}) for r in records)


def test_sample_without_cycles_fails(runner, tmp_path):
    (tmp_path / 'edge.json').write_text('{"nodes": 2, "edges": [[0, 0, 1]]}')
    result = runner.invoke(cli, ['--seed', '0', 'sample', 'sc', '--graph', 'edge.json'])
    assert result.exit_code == 1


def test_gadgets(runner, tmp_path):
    build(runner, 'theta', '--output', 'theta.json')
    result = runner.invoke(cli, ['gadget', 'bigons', '--graph', 'theta.json', '--d', '2', '--output', 'b.json'])
    assert result.exit_code == 0, result.output
    assert (tmp_path / 'b.gadget.json').exists()
    assert runner.invoke(cli, ['gadget', 'rd', '--d', '1', '--output', 'rd.json']).exit_code == 0
    assert runner.invoke(cli, ['gadget', 'bigons', '--output', 'x.json']).exit_code == 2
    assert runner.invoke(cli, ['gadget', 'td', '--graph', 'theta.json', '--output', 'td.json']).exit_code == 1


def test_mcmc_run_with_checkpoint(runner, tmp_path):
    build(runner, 'grid', '--n', '4', '--output', 'grid.json')
    result = runner.invoke(cli, [
        '--seed', '2', 'mcmc-run', '--graph', 'grid.json', '--lambda', '1/2', '--apd', '50',
        '--steps', '300', '--stats-out', 'stats', '--checkpoint', 'chain.json',
    ])
    assert result.exit_code == 0, result.output
    assert '300 steps' in result.output
    for name in ('flips_nodes.csv', 'flips_edges.csv', 'flips_flips.pgm', 'flips_occupancy.pgm'):
        assert (tmp_path / 'stats' / name).exists()
    assert json.loads((tmp_path / 'chain.json').read_text())['steps_done'] == 300


def test_mcmc_run_needs_a_layout(runner):
    build(runner, 'theta', '--output', 'theta.json')
    result = runner.invoke(cli, ['mcmc-run', '--graph', 'theta.json', '--steps', '10'])
    assert result.exit_code == 2


def test_experiment_from_file(runner, tmp_path):
    config = {
        'experiment_id': 'cli-run',
        'kind': 'flip_heatmap',
        'graph': {'family': 'grid', 'n': 3},
        'params': {'lambda': 1, 'steps': 100, 'init': 'vert'},
        'seed': 0,
        'output_dir': 'runs',
    }
    (tmp_path / 'exp.json').write_text(json.dumps(config))
    result = runner.invoke(cli, ['experiment', 'exp.json'])
    assert result.exit_code == 0, result.output
    assert 'summary.csv' in result.output
    assert (tmp_path / 'runs' / 'ledger.jsonl').exists()


def test_unknown_experiment(runner):
    assert runner.invoke(cli, ['experiment', 'no-such-preset']).exit_code == 2


def test_experiment_file_that_is_not_text(runner, tmp_path):
    (tmp_path / 'exp.json').write_bytes(b'\xff\xfe\x00{')
    result = runner.invoke(cli, ['experiment', 'exp.json'])
    assert result.exit_code == 1
    assert 'Error' in result.output


def test_experiment_with_unwritable_ledger(runner, tmp_path):
    (tmp_path / 'runs' / 'ledger.jsonl').mkdir(parents=True)
    result = runner.invoke(cli, ['--out', 'runs', 'experiment', 'gate-2', '--samples', '5'])
    assert result.exit_code == 1
    assert not isinstance(result.exception, OSError)


def test_verify_writes_a_report(runner, tmp_path, mocker):
    suite = mocker.patch('src.cli.verify_suite', return_value=[CheckResult('rd_formulas', True, 3)])
    result = runner.invoke(cli, ['--seed', '4', '--out', 'out', 'verify'])
    assert result.exit_code == 0, result.output
    suite.assert_called_once_with('quick', 4)
    assert json.loads((tmp_path / 'out' / 'verify_quick.json').read_text())['passed'] is True


def test_verify_failure_exits_nonzero(runner, mocker):
    mocker.patch('src.cli.verify_suite', return_value=[CheckResult('duality', False, 5, 'mismatch')])
    assert runner.invoke(cli, ['verify']).exit_code == 1
