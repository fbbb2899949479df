import json
import logging

import pytest

from src.analysis import verification
from src.cli import SweepConfig, build_object, main, parse_grid
from src.core.config import EXIT_CONFIG, EXIT_FAIL, EXIT_OK
from src.core.errors import ConfigError
from src.core.graph import Graph
from src.core.vspace import build_ig


@pytest.fixture
def run(tmp_path):
    """Call main with a log file under tmp_path and restore the root handlers afterwards."""
    root = logging.getLogger()
    before = list(root.handlers)

    def _run(*argv):
        return main(list(argv) + ['--log-file', str(tmp_path / 'run.log')])

    yield _run
    for handler in root.handlers[:]:
        if handler not in before:
            root.removeHandler(handler)
            handler.close()


def test_parse_grid():
    assert parse_grid('2,3:1,2,3,4') == ([2, 3], [1, 2, 3, 4])
    assert parse_grid(':') == ([], [])
    with pytest.raises(ConfigError):
        parse_grid('2,3')
    with pytest.raises(ConfigError):
        parse_grid('a:1')


def test_sweep_config_validation():
    SweepConfig([2, 3], [1, 2]).validate()
    with pytest.raises(ConfigError):
        SweepConfig([6], [2]).validate()
    with pytest.raises(ConfigError):
        SweepConfig([2], [0]).validate()
    with pytest.raises(ConfigError):
        SweepConfig([2], [2], caps={'perfect': 0}).validate()


def test_build_object_kinds():
    assert build_object('ig', 3, 2).order == 8
    assert build_object('L', 3, 3).n == 20
    assert build_object('boolean-v', 3, 3).n == 8
    with pytest.raises(ConfigError):
        build_object('ug', 2, 0)


def test_build_ig_to_stdout(run, capsys):
    assert run('build', 'ig', '--q', '2', '--n', '2') == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data == {'vertices': [[0, 1], [1, 0], [1, 1]], 'edges': [[0, 2], [1, 2]]}


def test_build_is_byte_identical_across_runs(run, capsys):
    run('build', 'L', '--q', '3', '--n', '3')
    first = capsys.readouterr().out
    run('build', 'L', '--q', '3', '--n', '3')
    assert capsys.readouterr().out == first
    data = json.loads(first)
    assert len(data['elements']) == 20
    assert data['elements'][0] == [0, 0, 0]
    assert data['elements'][-1] == '1'


def test_build_empty_ring_zdg_and_dot(run, capsys):
    run('build', 'ring-zdg', '--q', '2', '--n', '1')
    assert json.loads(capsys.readouterr().out) == {'vertices': [], 'edges': []}
    run('build', 'ug', '--q', '2', '--n', '2', '--format', 'dot')
    dot = capsys.readouterr().out
    assert dot.startswith('graph "ug_q2_n2" {')
    assert '"(0,1)" -- "(1,0)";' in dot
    run('build', 'dualL', '--q', '2', '--n', '2', '--format', 'dot')
    assert 'rankdir=BT;' in capsys.readouterr().out


def test_build_to_directory(run, tmp_path):
    out = tmp_path / 'objects'
    assert run('build', 'zdg-poset', '--q', '3', '--n', '2', '--out', str(out)) == EXIT_OK
    data = json.loads((out / 'zdg-poset_q3_n2.json').read_text())
    assert len(data['vertices']) == 4
    assert len(data['edges']) == 4


def test_verify(run, capsys):
    assert run('verify', 'igv', '--q', '3', '--n', '3') == EXIT_OK
    out = capsys.readouterr().out
    assert 'PASS' in out
    assert out.rstrip().endswith('1 checks: 1 PASS, 0 FAIL, 0 SKIPPED')


def test_verify_all_writes_tables(run, tmp_path):
    assert run('verify', 'all', '--q', '2', '--n', '2', '--out', str(tmp_path / 'v')) == EXIT_OK
    data = json.loads((tmp_path / 'v' / 'report.json').read_text())
    assert data['summary'] == {'PASS': 16, 'FAIL': 0, 'SKIPPED': 0}


def test_verify_skips_over_cap(run, capsys):
    assert run('verify', 'perfect-cor', '--q', '2', '--n', '4', '--perfect-cap', '4') == EXIT_OK
    assert '0 PASS, 0 FAIL, 1 SKIPPED' in capsys.readouterr().out


def test_empty_grid(run, capsys, tmp_path):
    assert run('sweep', '--grid', ':', '--out', str(tmp_path / 'empty')) == EXIT_OK
    assert capsys.readouterr().out == '0 checks: 0 PASS, 0 FAIL, 0 SKIPPED\n'
    assert '(empty grid)' in (tmp_path / 'empty' / 'report.txt').read_text()


@pytest.mark.parametrize('argv', [
    ('sweep', '--grid', '6:2'),
    ('sweep', '--grid', '2;3'),
    ('sweep', '--grid', '2:1', '--workers', '0'),
    ('verify', 'igv', '--q', '6', '--n', '2'),
    ('build', 'ig', '--q', '10', '--n', '2'),
    ('build', 'ig', '--q', '2', '--n', '0'),
])
def test_configuration_errors_exit_2(run, tmp_path, argv):
    assert run(*argv, *(['--out', str(tmp_path / 'o')] if argv[0] == 'sweep' else [])) == EXIT_CONFIG


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(['build', 'nonsense', '--q', '2', '--n', '2'])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(['verify', 'no-such-check', '--q', '2', '--n', '2'])
    # sweep reports have fixed formats
    with pytest.raises(SystemExit):
        main(['sweep', '--grid', '2:1', '--format', 'dot'])


def test_sweep_reports_are_reproducible(run, tmp_path, capsys):
    first, second = tmp_path / 'a', tmp_path / 'b'
    assert run('sweep', '--grid', '2:1,2', '--out', str(first)) == EXIT_OK
    assert run('sweep', '--grid', '2:1,2', '--out', str(second), '--workers', '1') == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ['32 checks: 32 PASS, 0 FAIL, 0 SKIPPED'] * 2
    for name in ('report.txt', 'report.csv', 'report.json'):
        assert (first / name).read_bytes() == (second / name).read_bytes()
    header = (first / 'report.csv').read_text().splitlines()[0]
    assert header == 'check,q,n,status,detail,witness'


def test_sweep_pdf(run, tmp_path):
    assert run('sweep', '--grid', '2:2', '--out', str(tmp_path), '--pdf') == EXIT_OK
    assert (tmp_path / 'report.pdf').read_bytes().startswith(b'%PDF')


def test_sweep_with_injected_fault_exits_1(run, tmp_path, monkeypatch):
    real = build_ig(2, 2)
    broken = Graph.from_edges(real.vertices, real.edge_list()[1:])
    monkeypatch.setattr(verification, 'build_ig', lambda q, n: broken)
    assert run('sweep', '--grid', '2:2', '--out', str(tmp_path)) == EXIT_FAIL
    data = json.loads((tmp_path / 'report.json').read_text())
    failed = [r for r in data['results'] if r['status'] == 'FAIL']
    assert {r['check'] for r in failed} >= {'igv', 'gamma-iso'}
    assert (tmp_path / 'run.log').exists()
