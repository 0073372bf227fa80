"""
Test command line subcommands and their output files
"""

import hashlib
import json

import numpy as np
import pandas as pd
import pytest

import app
from models import ModelParams, ProtocolConfig, RunManifest
from services.sweep_service import SweepService

PROTOCOL = ['-n', '32', '--transient', '40', '--realizations', '2']


@pytest.fixture
def run_cli(tmp_path):
    """Run app.main with logs under tmp_path and return the exit code"""
    def run(*argv):
        return app.main(['--log-dir', str(tmp_path / 'logs'), '--quiet', *argv])
    return run


def read_json(path):
    with open(path, 'r', encoding='utf-8') as handle:
        return json.load(handle)


def assert_manifest_covers(out_dir, expected_files):
    manifest = read_json(out_dir / 'manifest.json')
    assert sorted(manifest['outputs']) == sorted(expected_files)
    for name, digest in manifest['outputs'].items():
        assert hashlib.sha256((out_dir / name).read_bytes()).hexdigest() == digest
    assert set(manifest) == set(RunManifest.__dataclass_fields__)
    return manifest


DISTRIBUTION_FILES = ['sample.csv', 'hist_linear.csv', 'hist_log.csv', 'fit.json', 'stats.json',
                      'ccdf.csv', 'lorenz.csv']


def test_simulate_writes_all_outputs(run_cli, tmp_path):
    out_dir = tmp_path / 'simulate'
    assert run_cli('simulate', '--a', '0.6', '--r', '4', *PROTOCOL, '--out-dir', str(out_dir)) == 0

    manifest = assert_manifest_covers(out_dir, DISTRIBUTION_FILES)
    assert manifest['command'] == 'simulate'
    assert manifest['base_seed'] == 20071213
    assert manifest['config']['n'] == 32
    assert manifest['argv'][0] == '--log-dir'

    sample = pd.read_csv(out_dir / 'sample.csv')
    assert list(sample.columns) == ['x']
    assert len(sample) == 64

    histogram = pd.read_csv(out_dir / 'hist_linear.csv')
    assert list(histogram.columns) == ['bin_lo', 'bin_hi', 'count']
    assert histogram['count'].sum() == 64

    stats = read_json(out_dir / 'stats.json')
    assert {'mean', 'std', 'gini', 'h', 'label', 'n', 'ks_exponential', 'ks_pareto'} <= set(stats)
    assert stats['n'] == 64

    fit = read_json(out_dir / 'fit.json')
    assert fit['label'] in ('BOLTZMANN_GIBBS', 'PARETO', 'UNCLASSIFIED')


def test_simulate_sample_round_trips_exactly(run_cli, tmp_path):
    out_dir = tmp_path / 'simulate'
    assert run_cli('simulate', *PROTOCOL, '--out-dir', str(out_dir)) == 0
    text = (out_dir / 'sample.csv').read_text()
    assert text.endswith('\n')

    protocol = ProtocolConfig(n=32, transient=40, realizations=2)
    expected = SweepService.run_protocol(ModelParams(r=4.0, a=0.6), protocol).sample.values
    written = np.array([float(line) for line in text.splitlines()[1:]])
    assert np.array_equal(written, expected)


def test_simulate_stats_average_the_measurement_window(run_cli, tmp_path):
    out_dir = tmp_path / 'simulate'
    assert run_cli('simulate', *PROTOCOL, '--measure-iters', '3', '--out-dir', str(out_dir)) == 0
    stats = read_json(out_dir / 'stats.json')
    assert read_json(out_dir / 'manifest.json')['config']['snapshot_only'] is False

    params = ModelParams(r=4.0, a=0.6)
    averaged = ProtocolConfig(n=32, transient=40, measure_iters=3, realizations=2, snapshot_only=False)
    snapshot = ProtocolConfig(n=32, transient=40, measure_iters=3, realizations=2, snapshot_only=True)
    assert stats['mean'] == SweepService.run_protocol(params, averaged).stats.mean
    assert stats['mean'] != SweepService.run_protocol(params, snapshot).stats.mean


def test_simulate_collapse(run_cli, tmp_path):
    out_dir = tmp_path / 'collapse'
    assert run_cli('simulate', '--r', '0.5', '-n', '32', '--transient', '2000',
                   '--realizations', '2', '--out-dir', str(out_dir)) == 0
    stats = read_json(out_dir / 'stats.json')
    assert stats['mean'] < 1e-6
    assert stats['label'] == 'COLLAPSED'
    assert read_json(out_dir / 'fit.json')['kind'] is None
    assert pd.read_csv(out_dir / 'hist_log.csv').empty


def test_simulate_timeseries(run_cli, tmp_path):
    out_dir = tmp_path / 'series'
    assert run_cli('simulate', *PROTOCOL, '--measure-iters', '4', '--timeseries',
                   '--out-dir', str(out_dir)) == 0
    series = pd.read_csv(out_dir / 'timeseries.csv')
    assert list(series.columns) == ['t', 'mean', 'std', 'gini']
    assert series['t'].tolist() == [41, 42, 43, 44]
    assert_manifest_covers(out_dir, DISTRIBUTION_FILES + ['timeseries.csv'])


def test_sweep_phase_table_and_rerun_identity(run_cli, tmp_path):
    args = ['sweep', '--a-range', '0.6:0.92:0.32', '--r-range', '4:8:4', *PROTOCOL]
    assert run_cli(*args, '--out-dir', str(tmp_path / 'first')) == 0
    assert run_cli('--workers', '2', *args, '--out-dir', str(tmp_path / 'second')) == 0

    phase = pd.read_csv(tmp_path / 'first' / 'phase.csv')
    assert list(phase.columns) == ['a', 'r', 'label', 'mu', 'h', 'alpha', 'gini', 'mean', 'std', 'n_pooled']
    assert phase['a'].tolist() == pytest.approx([0.6, 0.6, 0.92, 0.92])
    assert phase['r'].tolist() == [4.0, 8.0, 4.0, 8.0]
    assert (tmp_path / 'first' / 'phase.csv').read_bytes() == (tmp_path / 'second' / 'phase.csv').read_bytes()
    assert_manifest_covers(tmp_path / 'first', ['phase.csv'])


def test_sweep_collapsed_row_has_empty_fit_cells(run_cli, tmp_path):
    out_dir = tmp_path / 'sweep'
    assert run_cli('sweep', '--a-range', '0.5:0.5:1', '--r-range', '0.5:0.5:1',
                   '-n', '16', '--transient', '2000', '--realizations', '1', '--out-dir', str(out_dir)) == 0
    lines = (out_dir / 'phase.csv').read_text().splitlines()
    assert len(lines) == 2
    row = lines[1].split(',')
    assert row[2] == 'COLLAPSED'
    assert row[3:6] == ['', '', '']


@pytest.mark.parametrize('bad_range', ['0.6:0.9', '1:0:0.1', '0:1:0', 'a:b:c'])
def test_sweep_malformed_range_is_usage_error(run_cli, tmp_path, bad_range, capsys):
    code = run_cli('sweep', '--a-range', bad_range, '--r-range', '4:4:1', '--out-dir', str(tmp_path / 'x'))
    assert code == 2
    assert 'USAGE_ERROR' in capsys.readouterr().err


def test_sweep_requires_ranges(run_cli, tmp_path):
    assert run_cli('sweep', '--out-dir', str(tmp_path / 'x')) == 2


def test_bifurcate_outputs(run_cli, tmp_path):
    out_dir = tmp_path / 'bif'
    assert run_cli('bifurcate', '--a', '0', '--r-range', '2:8:2', '--transient', '10000',
                   '--kept', '16', '--out-dir', str(out_dir)) == 0

    orbit = pd.read_csv(out_dir / 'bifurcation.csv')
    assert list(orbit.columns) == ['r', 'x']
    assert len(orbit) == 4 * 16

    periods = pd.read_csv(out_dir / 'periods.csv')
    assert periods['r'].tolist() == [2.0, 4.0, 6.0, 8.0]
    assert periods['period'].tolist() == [1, 1, 1, 2]
    assert_manifest_covers(out_dir, ['bifurcation.csv', 'periods.csv'])


def test_bifurcate_default_transient_locates_flip(run_cli, tmp_path):
    out_dir = tmp_path / 'bif'
    assert run_cli('bifurcate', '--a', '0', '--r-range', '7.2:7.6:0.001', '--out-dir', str(out_dir)) == 0
    assert read_json(out_dir / 'manifest.json')['config']['transient'] == 10_000
    periods = pd.read_csv(out_dir / 'periods.csv')

    assert (periods.loc[periods['r'] < 7.36, 'period'] == 1).all()
    assert (periods.loc[periods['r'] > 7.42, 'period'] == 2).all()
    first_doubled = periods.loc[periods['period'] == 2, 'r'].min()
    assert abs(first_doubled - np.exp(2.0)) < 0.02


def test_bifurcate_period_near_unit_growth(run_cli, tmp_path):
    out_dir = tmp_path / 'bif'
    assert run_cli('bifurcate', '--a', '0', '--r-range', '1:1.02:0.01', '--out-dir', str(out_dir)) == 0
    periods = pd.read_csv(out_dir / 'periods.csv')
    # r = 1 decays to 0 only like 1/t, so no period is reported there
    assert periods['period'].isna().tolist() == [True, False, False]
    assert periods['period'].iloc[1:].tolist() == [1, 1]


def test_bifurcate_collapse_range(run_cli, tmp_path):
    out_dir = tmp_path / 'bif'
    assert run_cli('bifurcate', '--r-range', '0.2:0.9:0.1', '--out-dir', str(out_dir)) == 0
    orbit = pd.read_csv(out_dir / 'bifurcation.csv')
    assert sorted(set(np.round(orbit['r'], 6))) == pytest.approx([0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
    assert (orbit['x'] < 1e-6).all()


def test_bifurcate_singular_pressure(run_cli, tmp_path, capsys):
    assert run_cli('bifurcate', '--a', '1', '--r-range', '1:7:1', '--out-dir', str(tmp_path / 'x')) == 2
    assert 'SINGULAR_PARAMETER' in capsys.readouterr().err


def test_exchange_zero_transactions(run_cli, tmp_path):
    out_dir = tmp_path / 'exchange'
    assert run_cli('exchange', '--model', 'dy', '-n', '50', '--transactions', '0',
                   '--out-dir', str(out_dir)) == 0
    sample = pd.read_csv(out_dir / 'sample.csv')
    assert (sample['x'] == 1.0).all()
    assert read_json(out_dir / 'stats.json')['gini'] == 0.0
    assert_manifest_covers(out_dir, DISTRIBUTION_FILES)


@pytest.mark.parametrize('model', ['dy', 'angle', 'angle-het'])
def test_exchange_models_conserve_money(run_cli, tmp_path, model):
    out_dir = tmp_path / model
    extra = ['--omega', '0.75'] if model == 'angle' else []
    assert run_cli('exchange', '--model', model, *extra, '-n', '100', '--transactions', '20000',
                   '--out-dir', str(out_dir)) == 0
    assert pd.read_csv(out_dir / 'sample.csv')['x'].sum() == pytest.approx(100.0, rel=1e-9)


def test_exchange_fits_whole_sample(run_cli, tmp_path):
    out_dir = tmp_path / 'dy'
    assert run_cli('exchange', '--model', 'dy', '-n', '500', '--transactions', '100000',
                   '--out-dir', str(out_dir)) == 0
    # Money is conserved, so the whole-sample scale is the endowment
    assert read_json(out_dir / 'stats.json')['h'] == pytest.approx(1.0, rel=1e-9)


def test_exchange_omega_rules(run_cli, tmp_path):
    assert run_cli('exchange', '--model', 'angle', '--out-dir', str(tmp_path / 'a')) == 2
    assert run_cli('exchange', '--model', 'dy', '--omega', '0.5', '--out-dir', str(tmp_path / 'b')) == 2


def test_instability_outputs(run_cli, tmp_path):
    out_dir = tmp_path / 'instability'
    assert run_cli('instability', '--a', '0.6', '--r', '4', '-n', '100', '--steps', '30',
                   '--out-dir', str(out_dir)) == 0
    frame = pd.read_csv(out_dir / 'instability.csv')
    assert list(frame.columns) == ['t', 'deviation']
    assert frame['t'].tolist() == list(range(31))
    assert_manifest_covers(out_dir, ['instability.csv'])


def test_config_file_and_flag_precedence(run_cli, tmp_path):
    config_path = tmp_path / 'run.json'
    config_path.write_text(json.dumps({'n': 16, 'transient': 10, 'realizations': 3, 'seed': 5}))
    out_dir = tmp_path / 'configured'
    assert run_cli('--config', str(config_path), 'simulate', '--realizations', '1',
                   '--out-dir', str(out_dir)) == 0
    manifest = read_json(out_dir / 'manifest.json')
    assert manifest['config']['n'] == 16
    assert manifest['config']['realizations'] == 1
    assert manifest['base_seed'] == 5
    assert len(pd.read_csv(out_dir / 'sample.csv')) == 16


def test_config_file_unknown_key(run_cli, tmp_path):
    config_path = tmp_path / 'run.json'
    config_path.write_text(json.dumps({'colour': 'blue'}))
    assert run_cli('--config', str(config_path), 'instability', '--out-dir', str(tmp_path / 'x')) == 2


def test_missing_config_file(run_cli, tmp_path):
    assert run_cli('--config', str(tmp_path / 'nope.json'), 'instability',
                   '--out-dir', str(tmp_path / 'x')) == 2


def test_output_dir_from_environment(run_cli, tmp_path, monkeypatch):
    monkeypatch.setenv('WEALTHMAPS_OUT_DIR', str(tmp_path / 'env'))
    assert run_cli('instability', '-n', '10', '--steps', '3') == 0
    assert (tmp_path / 'env' / 'instability' / 'instability.csv').exists()


def test_invalid_domain_value(run_cli, tmp_path, capsys):
    assert run_cli('simulate', '-n', '1', '--out-dir', str(tmp_path / 'x')) == 2
    assert 'VALIDATION_ERROR' in capsys.readouterr().err


def test_domain_error_is_logged_with_its_code(run_cli, tmp_path, mocker):
    logged = mocker.patch('middleware.error_handler.log_error')
    assert run_cli('bifurcate', '--a', '1', '--r-range', '1:7:1', '--out-dir', str(tmp_path / 'x')) == 2
    _, kwargs = logged.call_args
    assert kwargs['error_code'] == 'SINGULAR_PARAMETER'
    assert kwargs['details'] == {'a': 1.0}


def test_output_failure_exit_code(run_cli, tmp_path, mocker):
    mocker.patch('services.output_service.os.replace', side_effect=OSError('disk full'))
    assert run_cli('instability', '-n', '10', '--steps', '3', '--out-dir', str(tmp_path / 'x')) == 4
    assert not list((tmp_path / 'x').glob('.tmp-*'))


def test_unexpected_error_exit_code(run_cli, tmp_path, mocker, capsys):
    mocker.patch('commands.instability.SweepService.instability_growth', side_effect=RuntimeError('boom'))
    assert run_cli('instability', '--out-dir', str(tmp_path / 'x')) == 1
    assert 'UNEXPECTED_ERROR' in capsys.readouterr().err


def test_unknown_subcommand_exits_with_usage():
    with pytest.raises(SystemExit) as excinfo:
        app.main(['nonsense'])
    assert excinfo.value.code == 2
