import json
import math

import numpy as np
import pytest

from src.analysis.props import Certificate
from src.analysis.verification import CheckResult
from src.core.config import EXIT_FAIL, EXIT_OK
from src.core.graph import complete, path
from src.core.order import Poset, boolean_lattice
from src.core.vspace import IndexSet
from src.reports import report_generator
from src.reports.report_generator import ReportGenerator, ReportRenderingError, VerificationReport
from src.reports.serialization import (
    graph_to_dict, graph_to_dot, label_text, poset_to_dict, poset_to_dot, render, to_jsonable, write_atomic,
)


def sample_results():
    return [
        CheckResult('igv', 2, 2, 'PASS', '3 vertices, 2 edges', None, 0.013),
        CheckResult('perfect-cor', 2, 4, 'SKIPPED', 'cap', {'size': 15, 'cap': 4}, 0.2),
        CheckResult('ugv', 3, 2, 'FAIL', 'edge <a, b> & more', Certificate('discrepancy', ['edge', [(1, 0), (0, 1)], 'first']), 1.5),
    ]


def test_to_jsonable():
    assert to_jsonable((1, 0, 2)) == [1, 0, 2]
    assert to_jsonable(IndexSet.of([1, 3])) == '{1,3}'
    assert to_jsonable(math.inf) == 'inf'
    assert to_jsonable(np.int64(7)) == 7
    assert to_jsonable({'k': {(1, 2)}}) == {'k': [[1, 2]]}
    assert to_jsonable(Certificate('hole', [0, 1])) == {'kind': 'hole', 'data': [0, 1]}


def test_label_text():
    assert label_text((1, 0, 2)) == '(1,0,2)'
    assert label_text(IndexSet.of([2])) == '{2}'
    assert label_text('1') == '1'


def test_graph_and_poset_dicts():
    assert graph_to_dict(path(['a', 'b', 'c'])) == {'vertices': ['a', 'b', 'c'], 'edges': [[0, 1], [1, 2]]}
    chain = Poset.chain(['0', '1'])
    assert poset_to_dict(chain) == {'elements': ['0', '1'], 'leq': [[0, 0], [0, 1], [1, 1]]}


def test_dot_output():
    dot = graph_to_dot(complete([(1, 0), (0, 1)]), name='k2')
    assert dot == 'graph "k2" {\n  "(0,1)";\n  "(1,0)";\n  "(0,1)" -- "(1,0)";\n}\n'
    hasse = poset_to_dot(boolean_lattice(2))
    assert hasse.count('->') == 4
    assert '"{}" -> "{1}";' in hasse
    with pytest.raises(ValueError):
        render(path([1, 2]), 'svg')


def test_write_atomic(tmp_path):
    target = tmp_path / 'nested' / 'out.json'
    write_atomic(target, 'first\n')
    write_atomic(target, 'second\n')
    assert target.read_text() == 'second\n'
    assert [p.name for p in target.parent.iterdir()] == ['out.json']


def test_report_summary_and_exit_code():
    report = VerificationReport(sample_results())
    assert report.counts() == {'PASS': 1, 'FAIL': 1, 'SKIPPED': 1}
    assert report.summary_line() == '3 checks: 1 PASS, 1 FAIL, 1 SKIPPED'
    assert report.exit_code == EXIT_FAIL
    assert VerificationReport(sample_results()[:2]).exit_code == EXIT_OK
    assert VerificationReport([]).exit_code == EXIT_OK


def test_report_tables_omit_timings():
    report = VerificationReport(sample_results())
    data = json.loads(report.to_json())
    assert data['summary'] == {'FAIL': 1, 'PASS': 1, 'SKIPPED': 1}
    assert all('elapsed' not in r for r in data['results'])
    assert data['results'][2]['witness']['data'] == ['edge', [[1, 0], [0, 1]], 'first']
    csv = report.to_csv()
    assert csv.splitlines()[0] == 'check,q,n,status,detail,witness'
    assert '0.013' not in csv
    assert 'elapsed' in report.to_frame(with_elapsed=True).columns
    assert report.to_text().endswith('3 checks: 1 PASS, 1 FAIL, 1 SKIPPED\n')


def test_empty_report():
    report = VerificationReport()
    assert report.to_text() == '(empty grid)\n\n0 checks: 0 PASS, 0 FAIL, 0 SKIPPED\n'
    assert json.loads(report.to_json()) == {'results': [], 'summary': {'FAIL': 0, 'PASS': 0, 'SKIPPED': 0}}


def test_generator_writes_files(tmp_path):
    generator = ReportGenerator(str(tmp_path / 'out'))
    paths = generator.write_tables(VerificationReport(sample_results()))
    assert sorted(paths) == ['csv', 'json', 'txt']
    pdf = generator.write_pdf(VerificationReport(sample_results()), title='Sample')
    assert open(pdf, 'rb').read(4) == b'%PDF'


def test_pdf_failure_is_wrapped(tmp_path, monkeypatch):
    def broken_build(self, story):
        raise RuntimeError('layout')

    monkeypatch.setattr(report_generator.BaseDocTemplate, 'build', broken_build)
    generator = ReportGenerator(str(tmp_path))
    with pytest.raises(ReportRenderingError):
        generator.write_pdf(VerificationReport(sample_results()))
    assert not (tmp_path / 'report.pdf').exists()
