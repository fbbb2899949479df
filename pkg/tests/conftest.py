"""Shared graph and poset builders for the test suite."""

import numpy as np
import pytest

from src.core.graph import Graph
from src.core.order import Poset, transitive_closure


def random_graph(rng, n, p=0.5):
    """G(n, p) on integer labels."""
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(list(range(n)), rows)


def random_poset_with_zero(rng, k, p=0.35):
    """Random order on k points (upper-triangular relation, closed) with a new least element 'z'."""
    rel = np.zeros((k + 1, k + 1), dtype=bool)
    rel[0, :] = True
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            rel[i, j] = rng.random() < p
    labels = ['z'] + [f'p{i}' for i in range(1, k + 1)]
    return Poset(labels, transitive_closure(rel))


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def make_random_graph():
    return random_graph


@pytest.fixture
def make_random_poset():
    return random_poset_with_zero
