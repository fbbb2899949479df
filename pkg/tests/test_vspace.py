import itertools

import pytest

from src.core.errors import UnsupportedCardinalityError
from src.core.vspace import (
    IndexSet, all_vectors, basis_vector, build_ig, build_ug, class_sizes, full_class,
    is_unit, nonzero_vectors, partition_classes, skeleton, vector_label, zero_vector,
)


def test_index_set_basics():
    s = IndexSet.of([1, 3])
    assert s.members == (1, 3)
    assert len(s) == 2
    assert 3 in s and 2 not in s
    assert str(s) == '{1,3}'
    assert s.complement(4) == IndexSet.of([2, 4])
    assert IndexSet.of([1]).issubset(s)
    assert s.isdisjoint(IndexSet.of([2]))
    assert (s | IndexSet.of([2])) == IndexSet.full(3)
    with pytest.raises(ValueError):
        IndexSet.of([0])


def test_all_subsets_order():
    subsets = IndexSet.all_subsets(3)
    assert len(subsets) == 8
    assert subsets[0] == IndexSet(0)
    assert subsets[-1] == IndexSet.full(3)
    assert [len(s) for s in subsets] == sorted(len(s) for s in subsets)


def test_skeleton():
    assert skeleton((0, 2, 0, 1)) == IndexSet.of([2, 4])
    assert skeleton(zero_vector(3)) == IndexSet(0)
    assert skeleton(basis_vector(2, 3)) == IndexSet.of([2])


def test_vector_enumeration_is_lexicographic():
    vectors = all_vectors(3, 2)
    assert vectors == sorted(vectors)
    assert vectors[0] == (0, 0)
    assert len(nonzero_vectors(3, 2)) == 8
    with pytest.raises(UnsupportedCardinalityError):
        all_vectors(6, 2)


@pytest.mark.parametrize('q,n', [(2, 1), (2, 4), (3, 3), (4, 2), (5, 3)])
def test_partition_class_sizes(q, n):
    classes = partition_classes(q, n)
    sizes = class_sizes(q, n)
    assert len(classes) == 2 ** n
    for key, members in classes.items():
        assert len(members) == sizes[key] == (q - 1) ** len(key)
        assert all(skeleton(a) == key for a in members)
    flat = [a for members in classes.values() for a in members]
    assert sorted(flat) == all_vectors(q, n)


def test_partition_rejects_zero_dimension():
    with pytest.raises(ValueError):
        partition_classes(3, 0)


def test_full_class_is_the_units():
    units = full_class(3, 2)
    assert len(units) == 4
    assert all(is_unit(a) for a in units)
    assert not is_unit((1, 0))


def test_ig_small():
    ig = build_ig(2, 2)
    assert ig.order == 3
    assert ig.edge_count() == 2
    assert ig.has_edge((1, 0), (1, 1))
    assert not ig.has_edge((1, 0), (0, 1))


def test_ug_small():
    ug = build_ug(2, 2)
    assert ug.order == 3
    assert ug.has_edge((1, 0), (0, 1))
    assert ug.has_edge((1, 1), (1, 0))


@pytest.mark.parametrize('q,n', [(2, 3), (3, 2), (3, 3)])
def test_component_graphs_follow_skeletons(q, n):
    ig, ug = build_ig(q, n), build_ug(q, n)
    full = IndexSet.full(n)
    assert ig.order == ug.order == q ** n - 1
    for a, b in itertools.combinations(nonzero_vectors(q, n), 2):
        sa, sb = skeleton(a), skeleton(b)
        assert ig.has_edge(a, b) == (not sa.isdisjoint(sb))
        assert ug.has_edge(a, b) == ((sa | sb) == full)


def test_vector_labels():
    assert vector_label((1, 0, 2), 3) == 'v1+2v3'
    assert vector_label((0, 0), 5) == '0'
    assert vector_label((3,), 4) == '(x+1)v1'
    assert vector_label((0, 2), 4) == 'xv2'
