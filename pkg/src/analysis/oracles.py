"""
Definitional, brute-force checkers for small inputs.

These share no code with the deciders in props and order beyond the Graph and
Poset containers; tests use them to cross-check the fast paths on graphs with
at most about nine vertices.
"""

import itertools
from typing import Hashable, List, Set

from src.core.graph import Graph, bits, popcount
from src.core.order import Poset


def induced_cycles(G: Graph, min_length: int = 3) -> List[List[int]]:
    """Vertex masks (as index lists) of every induced cycle with at least min_length vertices."""
    found = []
    for mask in range(1, 1 << G.order):
        if popcount(mask) < max(3, min_length):
            continue
        members = list(bits(mask))
        if any(popcount(G.rows[i] & mask) != 2 for i in members):
            continue
        # 2-regular and connected means a single cycle
        seen = {members[0]}
        stack = [members[0]]
        while stack:
            v = stack.pop()
            for u in bits(G.rows[v] & mask):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) == len(members):
            found.append(members)
    return found


def naive_is_chordal(G: Graph) -> bool:
    return not induced_cycles(G, 4)


def naive_clique_number(G: Graph) -> int:
    best = 0
    for mask in range(1 << G.order):
        if popcount(mask) > best and G.is_clique(mask):
            best = popcount(mask)
    return best


def naive_chromatic_number(G: Graph) -> int:
    """Smallest k admitting a proper k-colouring, by plain backtracking."""
    n = G.order
    if n == 0:
        return 0

    def colourable(k: int) -> bool:
        colour = [-1] * n

        def place(v: int) -> bool:
            if v == n:
                return True
            for c in range(k):
                if all(colour[u] != c for u in bits(G.rows[v]) if u < v):
                    colour[v] = c
                    if place(v + 1):
                        return True
            colour[v] = -1
            return False

        return place(0)

    k = 1
    while not colourable(k):
        k += 1
    return k


def naive_is_perfect(G: Graph) -> bool:
    """chi == omega on every induced subgraph."""
    for mask in range(1, 1 << G.order):
        H = G.induced_subgraph(mask)
        if naive_chromatic_number(H) != naive_clique_number(H):
            return False
    return True


def naive_is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.order != H.order or G.edge_count() != H.edge_count():
        return False
    edges = {frozenset(e) for e in G.edge_indices()}
    target = {frozenset(e) for e in H.edge_indices()}
    for perm in itertools.permutations(range(G.order)):
        if {frozenset((perm[i], perm[j])) for i, j in edges} == target:
            return True
    return False


def naive_lower_cone(P: Poset, labels: List[Hashable]) -> Set[Hashable]:
    """A^l by scanning every element against every member of A."""
    out = set()
    for x in P.elements:
        if all(P.leq[P.index(x), P.index(a)] for a in labels):
            out.add(x)
    return out


def naive_zdg_edges(P: Poset) -> Set[frozenset]:
    """Edges of G(P) straight from the lower-cone definition, as label pairs."""
    zero = P.elements[P.require_zero()]
    edges = set()
    for a, b in itertools.combinations(P.elements, 2):
        if zero in (a, b):
            continue
        if naive_lower_cone(P, [a, b]) == {zero}:
            edges.add(frozenset((a, b)))
    return edges
