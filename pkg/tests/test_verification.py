import json

import pytest

from src.analysis import verification
from src.analysis.props import Certificate, is_chordal, is_perfect, validate_certificate
from src.analysis.verification import (
    CHECKS, CheckResult, atom_count_criteria, criteria_posets, run_check, run_suite,
)
from src.core.config import CHECK_IDS, STATUS_FAIL, STATUS_PASS, STATUS_SKIPPED
from src.core.graph import Graph, complete
from src.core.order import atom_partition, build_L
from src.core.vspace import build_ig, build_ug, full_class
from src.core.zdg import complement, join, ring_zdg, zdg_poset


def test_every_check_id_is_registered():
    assert tuple(CHECKS) == CHECK_IDS


@pytest.mark.parametrize('q,n', [(2, 1), (2, 2), (3, 2), (3, 3)])
@pytest.mark.parametrize('check_id', CHECK_IDS)
def test_checks_pass_on_small_grid(check_id, q, n):
    result = run_check(check_id, q, n)
    assert result.status == STATUS_PASS, result.detail
    assert result.check_id == check_id and (result.q, result.n) == (q, n)


def test_trivial_dimension_one():
    result = run_check('igv', 2, 1)
    assert result.status == STATUS_PASS
    assert result.detail.startswith('1 vertices')
    assert 'nothing to check' in run_check('diameter', 3, 1).detail


def test_chordal_check_at_dimension_four_carries_chordless_cycles():
    result = run_check('chordal-cor', 3, 4)
    assert result.status == STATUS_PASS
    for name, graph in (('IG', build_ig(3, 4)), ('UG', build_ug(3, 4))):
        assert result.witness[name].kind == 'cycle'
        assert validate_certificate(graph, result.witness[name])
    small = run_check('chordal-cor', 2, 3)
    assert {cert.kind for cert in small.witness.values()} == {'peo'}


@pytest.mark.slow
def test_default_grid_passes():
    results = run_suite([2, 3], [1, 2, 3, 4])
    assert len(results) == 2 * 4 * len(CHECK_IDS)
    bad = [(r.check_id, r.q, r.n, r.detail) for r in results if r.status != STATUS_PASS]
    assert bad == []


WIDE_GRID = [(q, n) for q in (2, 3, 4, 5) for n in (1, 2, 3)] + [(2, 4), (2, 5), (3, 4)]


@pytest.mark.slow
@pytest.mark.parametrize('q,n', WIDE_GRID)
@pytest.mark.parametrize('check_id', ['igv', 'ugv', 'gamma-iso', 'boolean-compress', 'lemma22', 'partition'])
def test_identities_on_wide_grid(check_id, q, n):
    result = run_check(check_id, q, n)
    assert result.status == STATUS_PASS, result.detail


@pytest.mark.slow
def test_perfection_fails_in_dimension_five_with_certificates():
    result = run_check('perfect-cor', 2, 5)
    assert result.status == STATUS_PASS
    assert set(result.witness) == {'IG', 'UG'}
    for name, graph in (('IG', build_ig(2, 5)), ('UG', build_ug(2, 5))):
        assert validate_certificate(graph, result.witness[name])


def test_injected_fault_is_reported_with_a_checkable_witness(monkeypatch):
    real = build_ig(3, 2)
    dropped = ((1, 0), (1, 1))
    broken = Graph.from_edges(real.vertices, [e for e in real.edge_list() if e != dropped])
    monkeypatch.setattr(verification, 'build_ig', lambda q, n: broken)

    result = run_check('igv', 3, 2)
    assert result.status == STATUS_FAIL
    assert result.failed
    assert isinstance(result.witness, Certificate)
    assert result.witness.data == ['edge', [(1, 0), (1, 1)], 'second']
    expected = join(complement(zdg_poset(build_L(3, 2))), complete(full_class(3, 2)))
    assert validate_certificate(broken, result.witness, expected)


def test_injected_fault_breaks_isomorphism(monkeypatch):
    real = build_ig(2, 3)
    broken = Graph.from_edges(real.vertices, real.edge_list()[1:])
    monkeypatch.setattr(verification, 'build_ig', lambda q, n: broken)
    result = run_check('gamma-iso', 2, 3)
    assert result.status == STATUS_FAIL
    assert result.witness.data == ['edges', real.edge_count() - 1, real.edge_count()]
    expected = join(complement(ring_zdg(2, 3)), complete(full_class(2, 3)))
    assert validate_certificate(broken, result.witness, expected)


def test_injected_fault_in_diameter_names_a_far_pair(monkeypatch):
    real = build_ug(2, 3)
    hub = full_class(2, 3)[0]
    # without the full vector, unit vectors sit at distance 3
    stripped = real.induced_subgraph(real.full_mask & ~real.mask_of([hub]))
    monkeypatch.setattr(verification, 'build_ug', lambda q, n: stripped)
    result = run_check('diameter', 2, 3)
    assert result.status == STATUS_FAIL
    assert result.witness.kind == 'distance'
    assert result.witness.data[2] > 2
    assert validate_certificate(stripped, result.witness)


def test_cap_exceeded_is_skipped():
    result = run_check('perfect-cor', 2, 4, caps={'perfect': 4})
    assert result.status == STATUS_SKIPPED
    assert result.witness == {'size': 15, 'cap': 4}
    assert not result.failed


def test_exceptions_become_failures(monkeypatch):
    def boom(q, n, caps):
        raise RuntimeError('wiring broke')

    monkeypatch.setitem(CHECKS, 'partition', boom)
    result = run_check('partition', 2, 2)
    assert result.status == STATUS_FAIL
    assert result.detail == 'RuntimeError: wiring broke'


def test_suite_keeps_grid_order():
    results = run_suite([2], [1, 2], ('partition', 'igv'), max_workers=2)
    assert [(r.check_id, r.q, r.n) for r in results] == [
        ('partition', 2, 1), ('igv', 2, 1), ('partition', 2, 2), ('igv', 2, 2),
    ]


def test_empty_suite():
    assert run_suite([], [1, 2]) == []
    assert run_suite([2], []) == []


def test_records_are_json_ready():
    record = run_check('reduced', 3, 2).to_record()
    assert record['check'] == 'reduced' and record['status'] == STATUS_PASS
    json.dumps(record)
    failed = CheckResult('igv', 2, 2, STATUS_FAIL, 'x', Certificate('discrepancy', ['edge', [(0, 1), (1, 0)], 'first']))
    assert failed.to_record()['witness'] == {'kind': 'discrepancy', 'data': ['edge', [[0, 1], [1, 0]], 'first']}


# --- Atom-count criteria ---

def test_atom_count_criteria_predictions():
    posets = dict(criteria_posets(2, 3))
    assert atom_count_criteria(posets['B2 stretched [1, 1]']) == {
        'G chordal': True, 'G^c chordal': True, 'G perfect': True,
    }
    assert atom_count_criteria(posets['B2 stretched [2, 1]'])['G chordal']
    assert not atom_count_criteria(posets['B2 stretched [2, 2]'])['G chordal']
    assert atom_count_criteria(posets['B3 stretched [1, 1, 1]'])['G chordal']
    assert not atom_count_criteria(posets['B3 stretched [2, 1, 1]'])['G chordal']
    assert atom_count_criteria(build_L(3, 4)) == {'G chordal': False, 'G^c chordal': False, 'G perfect': True}


def test_stretched_atoms_grow_their_class():
    posets = dict(criteria_posets(2, 2))
    P = posets['B2 stretched [2, 2]']
    assert P.n == 6
    assert [len(members) for members in atom_partition(P).values()] == [2, 2, 1]


@pytest.mark.parametrize('q,n', [(2, 2), (3, 3)])
def test_criteria_match_the_deciders(q, n):
    for name, P in criteria_posets(q, n):
        G = zdg_poset(P)
        found = {
            'G chordal': is_chordal(G)[0],
            'G^c chordal': is_chordal(complement(G))[0],
            'G perfect': is_perfect(G)[0],
        }
        assert found == atom_count_criteria(P), name


@pytest.mark.slow
@pytest.mark.parametrize('q,n', [(3, 4), (2, 5)])
def test_atom_criteria_beyond_the_small_grid(q, n):
    result = run_check('atom-criteria', q, n)
    assert result.status == STATUS_PASS, result.detail


def test_wrong_prediction_fails_with_a_certificate(monkeypatch):
    monkeypatch.setattr(verification, 'atom_count_criteria',
                        lambda P: {'G chordal': False, 'G^c chordal': True, 'G perfect': True})
    result = run_check('atom-criteria', 2, 2)
    assert result.status == STATUS_FAIL
    assert result.witness['poset'] == 'L' and result.witness['property'] == 'G chordal'
    cert = result.witness['certificate']
    assert cert.kind == 'peo'
    assert validate_certificate(zdg_poset(build_L(2, 2)), cert)
