"""
Zero-divisor graphs and the graph algebra used to compare them.

Three constructions: G(P) of a poset with 0 (which also covers the dual
lattice), and Gamma(F^n) of the product ring built straight from coordinate
tuples. The algebra covers complement, join and complete graphs.
"""

import logging
from typing import Iterable

import numpy as np

from src.core.field import field_new
from src.core.graph import Graph, Label, complete, empty_graph
from src.core.order import Poset, zero_divisors
from src.core.vspace import all_vectors, zero_vector

logger = logging.getLogger(__name__)

__all__ = ['zdg_poset', 'complement', 'join', 'complete', 'empty_graph', 'ring_zdg', 'induced_subgraph']


def zdg_poset(P: Poset) -> Graph:
    """
    G(P): vertices Z(P) minus {0}, a adjacent to b iff {a, b}^l = {0}.

    A poset without nonzero zero-divisors yields an empty graph with
    ``flagged_empty`` set.
    """
    z = P.require_zero()
    vertices = sorted(zero_divisors(P) - {z})
    if not vertices:
        logger.warning(f"{P!r} has no nonzero zero-divisors; returning the empty graph")
        return Graph([], [], flagged_empty=True)

    trivial = P.common_lower == 1
    sub = trivial[np.ix_(vertices, vertices)]
    labels = [P.elements[i] for i in vertices]
    rows = []
    for i in range(len(vertices)):
        r = 0
        for j in np.flatnonzero(sub[i]):
            if j != i:
                r |= 1 << int(j)
        rows.append(r)
    graph = Graph.from_rows(labels, rows)
    logger.debug(f"G(P) of {P!r}: {graph.order} vertices, {graph.edge_count()} edges")
    return graph


def complement(G: Graph) -> Graph:
    """Same vertices; an edge exactly where G has none."""
    full = G.full_mask
    rows = [full & ~r & ~(1 << i) for i, r in enumerate(G.rows)]
    return Graph(G.vertices, rows, flagged_empty=G.flagged_empty and not any(rows))


def join(G: Graph, H: Graph) -> Graph:
    """
    G v H: disjoint union of G and H plus every edge between them.

    If the label sets meet, labels are tagged (0, label) / (1, label) and the
    result carries ``relabeled``.
    """
    clash = set(G.vertices) & set(H.vertices)
    if clash:
        logger.warning(f"Join relabels {len(clash)} colliding labels")
        left = [(0, v) for v in G.vertices]
        right = [(1, v) for v in H.vertices]
    else:
        left, right = list(G.vertices), list(H.vertices)

    m = G.order
    cross_left = ((1 << H.order) - 1) << m
    rows = [r | cross_left for r in G.rows]
    rows += [(r << m) | G.full_mask for r in H.rows]
    return Graph.from_rows(left + right, rows, relabeled=bool(clash))


def induced_subgraph(G: Graph, labels: Iterable[Label]) -> Graph:
    return G.induced_subgraph(G.mask_of(labels))


def ring_zdg(q: int, n: int) -> Graph:
    """
    Gamma(F^n): nonzero zero-divisors of the product ring (some coordinate
    zero, some nonzero), adjacent iff their coordinatewise product is zero.
    """
    if n < 1:
        raise ValueError(f"Dimension must be >= 1, got {n}")
    field = field_new(q)
    zero = zero_vector(n)
    vertices = [a for a in all_vectors(q, n) if any(a) and not all(a)]

    def product_is_zero(a, b) -> bool:
        return tuple(field.mul(x, y) for x, y in zip(a, b)) == zero

    graph = Graph.from_predicate(vertices, product_is_zero, flagged_empty=not vertices)
    logger.debug(f"Gamma(F_{q}^{n}): {graph.order} vertices, {graph.edge_count()} edges")
    return graph
