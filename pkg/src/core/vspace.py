"""
The vector space V = F^n over a supported finite field, with the standard basis.

A vector is the tuple of its coefficient indices in the field's canonical
element order. Its skeleton is the set of basis positions (1-based) carrying a
nonzero coefficient; vectors with the same skeleton I form the class V_I.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Tuple

from src.core.field import field_new
from src.core.graph import Graph, popcount

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class IndexSet:
    """Subset of {1, ..., n} stored as a bitmask (bit i-1 <-> member i)."""

    mask: int

    @classmethod
    def of(cls, members: Iterable[int]) -> 'IndexSet':
        mask = 0
        for i in members:
            if i < 1:
                raise ValueError(f"IndexSet members are 1-based, got {i}")
            mask |= 1 << (i - 1)
        return cls(mask)

    @classmethod
    def full(cls, n: int) -> 'IndexSet':
        return cls((1 << n) - 1)

    @classmethod
    def all_subsets(cls, n: int) -> List['IndexSet']:
        """Every subset of {1..n}, by size then by mask."""
        return sorted((cls(m) for m in range(1 << n)), key=lambda s: (len(s), s.mask))

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in range(self.mask.bit_length()) if (self.mask >> i) & 1)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, i: int) -> bool:
        return i >= 1 and bool((self.mask >> (i - 1)) & 1)

    def __and__(self, other: 'IndexSet') -> 'IndexSet':
        return IndexSet(self.mask & other.mask)

    def __or__(self, other: 'IndexSet') -> 'IndexSet':
        return IndexSet(self.mask | other.mask)

    def issubset(self, other: 'IndexSet') -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: 'IndexSet') -> bool:
        return self.mask & other.mask == 0

    def complement(self, n: int) -> 'IndexSet':
        return IndexSet(((1 << n) - 1) & ~self.mask)

    def __str__(self) -> str:
        return '{' + ','.join(map(str, self.members)) + '}'

    def __repr__(self) -> str:
        return f"IndexSet({str(self)})"


def skeleton(a: Vector) -> IndexSet:
    """Basis positions with nonzero coefficient; empty exactly for the zero vector."""
    mask = 0
    for i, c in enumerate(a):
        if c:
            mask |= 1 << i
    return IndexSet(mask)


def all_vectors(q: int, n: int) -> List[Vector]:
    """All q^n vectors in lexicographic coefficient order."""
    field_new(q)
    return list(itertools.product(range(q), repeat=n))


def nonzero_vectors(q: int, n: int) -> List[Vector]:
    return all_vectors(q, n)[1:]


def zero_vector(n: int) -> Vector:
    return (0,) * n


def basis_vector(i: int, n: int) -> Vector:
    """v_i (1-based) of the standard basis."""
    return tuple(1 if j == i - 1 else 0 for j in range(n))


def is_unit(a: Vector) -> bool:
    """a is a unit of the product ring F^n iff every coordinate is nonzero."""
    return all(a)


@lru_cache(maxsize=None)
def partition_classes(q: int, n: int) -> Dict[IndexSet, Tuple[Vector, ...]]:
    """
    The partition V = disjoint union of V_I over all I in {1..n}.

    Keys cover all 2^n subsets (ordered by size, then mask); each class lists
    its vectors in lexicographic order.
    """
    if n < 1:
        raise ValueError(f"Dimension must be >= 1, got {n}")
    classes: Dict[IndexSet, List[Vector]] = {key: [] for key in IndexSet.all_subsets(n)}
    for a in all_vectors(q, n):
        classes[skeleton(a)].append(a)
    logger.debug(f"Partitioned F_{q}^{n} into {len(classes)} classes")
    return {key: tuple(members) for key, members in classes.items()}


def class_sizes(q: int, n: int) -> Dict[IndexSet, int]:
    """Expected |V_I| = (q-1)^|I|."""
    return {key: (q - 1) ** len(key) for key in IndexSet.all_subsets(n)}


def full_class(q: int, n: int) -> Tuple[Vector, ...]:
    """V_{1..n}: the vectors with full skeleton (the units of F^n)."""
    return partition_classes(q, n)[IndexSet.full(n)]


@lru_cache(maxsize=None)
def build_ig(q: int, n: int) -> Graph:
    """Nonzero component graph: nonzero vectors, adjacent when skeletons intersect."""
    masks = {a: skeleton(a).mask for a in nonzero_vectors(q, n)}
    graph = Graph.from_predicate(masks, lambda a, b: bool(masks[a] & masks[b]))
    logger.debug(f"IG(F_{q}^{n}): {graph.order} vertices, {graph.edge_count()} edges")
    return graph


@lru_cache(maxsize=None)
def build_ug(q: int, n: int) -> Graph:
    """Nonzero component union graph: nonzero vectors, adjacent when skeletons cover {1..n}."""
    full = (1 << n) - 1
    masks = {a: skeleton(a).mask for a in nonzero_vectors(q, n)}
    graph = Graph.from_predicate(masks, lambda a, b: masks[a] | masks[b] == full)
    logger.debug(f"UG(F_{q}^{n}): {graph.order} vertices, {graph.edge_count()} edges")
    return graph


def vector_label(a: Vector, q: int) -> str:
    """Readable linear combination, e.g. 'v1+2v3'; '0' for the zero vector."""
    field = field_new(q)
    terms = []
    for i, c in enumerate(a, start=1):
        if not c:
            continue
        coeff = field.element_label(c)
        if c == 1:
            terms.append(f'v{i}')
        elif '+' in coeff:
            terms.append(f'({coeff})v{i}')
        else:
            terms.append(f'{coeff}v{i}')
    return '+'.join(terms) or '0'
