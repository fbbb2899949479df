"""
Graph quotients by twin relations.

``reduce`` merges adjacent twins (u ~ v iff u, v adjacent and
N(u) - {v} == N(v) - {u}); ``neighborhood_quotient`` merges vertices with
equal open neighbourhoods. Each class is labelled by its least member.
"""

import logging
from typing import Dict, List, Tuple

from src.core.errors import NonTransitiveRelationError
from src.core.graph import Graph, Label, bits, label_key

logger = logging.getLogger(__name__)


def _classes_from_relation(G: Graph, related: List[int]) -> List[int]:
    """Group vertex indices under a relation given as bitset rows (reflexive)."""
    seen = 0
    groups = []
    for i in range(G.order):
        if (seen >> i) & 1:
            continue
        groups.append(related[i])
        seen |= related[i]
    return groups


def _quotient(G: Graph, groups: List[int]) -> Tuple[Graph, Dict[Label, List[Label]]]:
    reps = []
    classes: Dict[Label, List[Label]] = {}
    for mask in groups:
        members = sorted(G.labels_of(mask), key=label_key)
        reps.append(G.index(members[0]))
        classes[members[0]] = members
    rows = []
    for a, rep in enumerate(reps):
        r = 0
        for b, other in enumerate(reps):
            if a != b and (G.rows[rep] >> other) & 1:
                r |= 1 << b
        rows.append(r)
    return Graph.from_rows([G.vertices[i] for i in reps], rows), classes


def twin_classes(G: Graph) -> Dict[Label, List[Label]]:
    """Classes of the adjacent-twin relation keyed by representative."""
    return reduce_with_classes(G)[1]


def reduce_with_classes(G: Graph) -> Tuple[Graph, Dict[Label, List[Label]]]:
    closed = [r | (1 << i) for i, r in enumerate(G.rows)]
    related = []
    for i in range(G.order):
        r = 1 << i
        for j in bits(G.rows[i]):
            if closed[i] == closed[j]:
                r |= 1 << j
        related.append(r)

    # u ~ v and v ~ w must give u ~ w
    for v in range(G.order):
        for u in bits(related[v] & ~(1 << v)):
            extra = related[v] & ~related[u]
            if extra:
                w = next(bits(extra))
                witness = (G.vertices[u], G.vertices[v], G.vertices[w])
                raise NonTransitiveRelationError(
                    f"Adjacent-twin relation not transitive at {witness!r}", witness=witness
                )

    quotient, classes = _quotient(G, _classes_from_relation(G, related))
    logger.debug(f"Reduced {G!r} to {quotient!r}")
    return quotient, classes


def reduce(G: Graph) -> Graph:
    """G_red: the quotient of G by the adjacent-twin relation."""
    return reduce_with_classes(G)[0]


def neighborhood_quotient_with_classes(G: Graph) -> Tuple[Graph, Dict[Label, List[Label]]]:
    by_row: Dict[int, int] = {}
    for i, r in enumerate(G.rows):
        by_row[r] = by_row.get(r, 0) | (1 << i)
    related = [by_row[r] for r in G.rows]
    quotient, classes = _quotient(G, _classes_from_relation(G, related))
    logger.debug(f"Neighbourhood quotient of {G!r} is {quotient!r}")
    return quotient, classes


def neighborhood_quotient(G: Graph) -> Graph:
    """[G]: the quotient of G by equality of open neighbourhoods."""
    return neighborhood_quotient_with_classes(G)[0]
