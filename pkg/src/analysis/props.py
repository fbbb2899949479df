"""
Graph property deciders with checkable certificates.

Chordality by maximum cardinality search, perfection by odd hole / antihole
search, exact clique and chromatic numbers by branch and bound, diameter and
isomorphism (VF2) via networkx. The exponential searches run on the twin
kernel of the input so that the large twin classes of the component graphs
do not count against the caps.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx

from src.core.config import CAPS
from src.core.errors import TooLargeError
from src.core.graph import (
    Graph, Label, bfs_distances, bits, label_key, lowest_bit, popcount, shortest_path,
)
from src.core.zdg import complement

logger = logging.getLogger(__name__)


@dataclass
class Certificate:
    """
    Evidence returned with a decision.

    kind is one of 'peo', 'cycle', 'hole', 'antihole', 'clique', 'coloring',
    'mapping', 'invariant', 'non-isomorphic', 'distance' or 'discrepancy';
    data holds labels (list) or a label map (dict).
    """

    kind: str
    data: Any = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        if isinstance(self.data, dict):
            return {'kind': self.kind, 'data': [[k, v] for k, v in self.data.items()]}
        return {'kind': self.kind, 'data': list(self.data)}


# --- Chordality ---

def mcs_order(G: Graph) -> List[int]:
    """Maximum cardinality search; returns the reverse visit order (a PEO if G is chordal)."""
    weight = [0] * G.order
    unvisited = G.full_mask
    visit = []
    while unvisited:
        v = max(bits(unvisited), key=lambda i: (weight[i], -i))
        visit.append(v)
        unvisited &= ~(1 << v)
        for u in bits(G.rows[v] & unvisited):
            weight[u] += 1
    return visit[::-1]


def _peo_violation(G: Graph, order: List[int]) -> Optional[Tuple[int, int, int]]:
    """First (v, a, b) with a, b later non-adjacent neighbours of v, else None."""
    later = G.full_mask
    for v in order:
        later &= ~(1 << v)
        nbrs = G.rows[v] & later
        for a in bits(nbrs):
            missing = nbrs & ~G.rows[a] & ~(1 << a)
            if missing:
                return v, a, lowest_bit(missing)
    return None


def _chordless_cycle_through(G: Graph, v: int) -> Optional[List[int]]:
    closed = G.rows[v] | (1 << v)
    outside = G.full_mask & ~closed
    for a in bits(G.rows[v]):
        reach = bfs_distances(G, a, within=outside | (1 << a))
        reach_mask = sum(1 << i for i in reach)
        for b in bits(G.rows[v] & ~G.rows[a] & ~(1 << a)):
            if b < a or not (G.rows[b] & reach_mask):
                continue
            route = shortest_path(G, a, b, within=outside)
            if route is not None:
                return [v] + route
    return None


def find_chordless_cycle(G: Graph) -> Optional[List[Label]]:
    """An induced cycle of length >= 4, or None when G is chordal."""
    violation = _peo_violation(G, mcs_order(G))
    if violation is None:
        return None
    first = violation[0]
    for v in [first] + [u for u in range(G.order) if u != first]:
        cyc = _chordless_cycle_through(G, v)
        if cyc is not None:
            return [G.vertices[i] for i in cyc]
    raise AssertionError("Elimination ordering failed but no chordless cycle exists")


def is_chordal(G: Graph) -> Tuple[bool, Certificate]:
    """True with a perfect elimination ordering, or False with a chordless cycle."""
    order = mcs_order(G)
    if _peo_violation(G, order) is None:
        return True, Certificate('peo', [G.vertices[i] for i in order])
    return False, Certificate('cycle', find_chordless_cycle(G))


# --- Twins ---

def _collapse(G: Graph, true_twins: bool, false_twins: bool) -> Tuple[Graph, Dict[Label, List[Label]]]:
    """Repeatedly keep the least vertex of each twin class; returns the kernel and class members."""
    members: Dict[Label, List[Label]] = {v: [v] for v in G.vertices}
    current = G
    while True:
        keep = current.full_mask
        keys = []
        if true_twins:
            keys.append([r | (1 << i) for i, r in enumerate(current.rows)])
        if false_twins:
            keys.append(list(current.rows))
        for rows in keys:
            first: Dict[int, int] = {}
            for i, r in enumerate(rows):
                if not (keep >> i) & 1:
                    continue
                if r in first:
                    keep &= ~(1 << i)
                    rep = current.vertices[first[r]]
                    members[rep].extend(members.pop(current.vertices[i]))
                else:
                    first[r] = i
            if keep != current.full_mask:
                break
        if keep == current.full_mask:
            return current, members
        current = current.induced_subgraph(keep)


def twin_kernel(G: Graph) -> Graph:
    """Induced subgraph keeping one vertex per true- and false-twin class, iterated to a fixpoint."""
    return _collapse(G, True, True)[0]


# --- Perfection ---

def _odd_hole(rows: List[int], n: int) -> Optional[List[int]]:
    closed = [r | (1 << i) for i, r in enumerate(rows)]
    for s in range(n):
        higher = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)

        def extend(path: List[int], blocked: int) -> Optional[List[int]]:
            last = path[-1]
            for w in bits(rows[last] & higher & ~blocked):
                if (rows[w] >> s) & 1:
                    k = len(path) + 1
                    if k >= 5 and k % 2 and path[1] < w:
                        return path + [w]
                    continue
                found = extend(path + [w], blocked | closed[last])
                if found:
                    return found
            return None

        for p2 in bits(rows[s] & higher):
            # neighbours of s stay available so the path can close back to s
            found = extend([s, p2], 0)
            if found:
                return found
    return None


def find_odd_hole(G: Graph) -> Optional[List[Label]]:
    """An induced odd cycle of length >= 5, in cycle order, or None."""
    hole = _odd_hole(list(G.rows), G.order)
    return None if hole is None else [G.vertices[i] for i in hole]


def is_perfect(G: Graph, cap: Optional[int] = None) -> Tuple[bool, Optional[Certificate]]:
    """
    Strong perfect graph test: G is perfect iff neither G nor its complement
    has an induced odd cycle of length >= 5. The cap bounds the twin kernel.
    """
    cap = CAPS['perfect'] if cap is None else cap
    kernel = twin_kernel(G)
    if kernel.order > cap:
        raise TooLargeError(
            f"Perfection check needs {kernel.order} kernel vertices (cap {cap})",
            size=kernel.order, cap=cap,
        )
    hole = find_odd_hole(kernel)
    if hole:
        return False, Certificate('hole', hole)
    antihole = find_odd_hole(complement(kernel))
    if antihole:
        return False, Certificate('antihole', antihole)
    return True, None


# --- Cliques ---

def _weighted_kernel(G: Graph) -> Tuple[Graph, Dict[Label, int], Dict[Label, List[Label]]]:
    """
    Collapse twins for clique search: true twins add their weights (a clique
    takes the whole class), false twins keep the heaviest representative.
    """
    weight = {v: 1 for v in G.vertices}
    witness = {v: [v] for v in G.vertices}
    current = G
    while True:
        changed = False
        # true twins
        first: Dict[int, int] = {}
        keep = current.full_mask
        for i, r in enumerate(current.rows):
            key = r | (1 << i)
            if key in first:
                rep, v = current.vertices[first[key]], current.vertices[i]
                weight[rep] += weight.pop(v)
                witness[rep] += witness.pop(v)
                keep &= ~(1 << i)
            else:
                first[key] = i
        if keep == current.full_mask:
            first = {}
            for i, r in enumerate(current.rows):
                if r in first:
                    rep, v = current.vertices[first[r]], current.vertices[i]
                    if weight[v] > weight[rep]:
                        weight[rep], witness[rep] = weight[v], witness[v]
                    weight.pop(v)
                    witness.pop(v)
                    keep &= ~(1 << i)
                else:
                    first[r] = i
        if keep != current.full_mask:
            current = current.induced_subgraph(keep)
            changed = True
        if not changed:
            return current, weight, witness


def _max_weight_clique(rows: List[int], weights: List[int]) -> Tuple[int, int]:
    """Branch and bound with greedy colour-class bounds; returns (weight, vertex mask)."""
    n = len(rows)
    best = [0, 0]

    def colour_bounds(cand: int) -> List[Tuple[int, int]]:
        """Vertices of cand with cumulative colour-class bounds, ascending."""
        out = []
        total = 0
        remaining = cand
        while remaining:
            avail = remaining
            heaviest = 0
            cls = []
            while avail:
                v = lowest_bit(avail)
                cls.append(v)
                heaviest = max(heaviest, weights[v])
                avail &= ~rows[v] & ~(1 << v)
                remaining &= ~(1 << v)
            total += heaviest
            out.extend((v, total) for v in cls)
        return out

    def expand(clique: int, w: int, cand: int) -> None:
        if not cand:
            if w > best[0]:
                best[0], best[1] = w, clique
            return
        for v, bound in reversed(colour_bounds(cand)):
            if w + bound <= best[0]:
                return
            expand(clique | (1 << v), w + weights[v], cand & rows[v])
            cand &= ~(1 << v)
        if w > best[0]:
            best[0], best[1] = w, clique

    expand(0, 0, (1 << n) - 1)
    return best[0], best[1]


def max_clique(G: Graph, cap: Optional[int] = None) -> List[Label]:
    """A maximum clique of G, as labels. The colour cap bounds the weighted twin kernel."""
    if G.order == 0:
        return []
    cap = CAPS['color'] if cap is None else cap
    kernel, weight, witness = _weighted_kernel(G)
    if kernel.order > cap:
        raise TooLargeError(f"Clique search needs {kernel.order} kernel vertices (cap {cap})",
                            size=kernel.order, cap=cap)
    w, mask = _max_weight_clique(list(kernel.rows), [weight[v] for v in kernel.vertices])
    clique = [u for v in kernel.labels_of(mask) for u in witness[v]]
    assert len(clique) == w
    return clique


def clique_number(G: Graph, cap: Optional[int] = None) -> int:
    """omega(G)."""
    return len(max_clique(G, cap))


# --- Colouring ---

def _dsatur(rows: List[int]) -> List[int]:
    """Greedy DSATUR; ties by saturation, then degree, then lowest index."""
    n = len(rows)
    colour = [-1] * n
    used = [0] * n
    degree = [popcount(r) for r in rows]
    for _ in range(n):
        v = max((i for i in range(n) if colour[i] < 0),
                key=lambda i: (popcount(used[i]), degree[i], -i))
        c = lowest_bit(~used[v])
        colour[v] = c
        for u in bits(rows[v]):
            used[u] |= 1 << c
    return colour


def dsatur_coloring(G: Graph) -> Dict[Label, int]:
    """A proper colouring with colours 0, 1, ... (an upper bound for chi)."""
    return {G.vertices[i]: c for i, c in enumerate(_dsatur(list(G.rows)))}


def _exact_colouring(rows: List[int], lower: int, upper: List[int]) -> List[int]:
    """Backtracking DSATUR; returns an optimal colouring given a known proper one."""
    n = len(rows)
    best = [max(upper) + 1, list(upper)]
    colour = [-1] * n
    used = [0] * n
    degree = [popcount(r) for r in rows]

    def search(coloured: int, k: int) -> bool:
        if coloured == n:
            if k < best[0]:
                best[0], best[1] = k, list(colour)
            return best[0] <= lower
        v = max((i for i in range(n) if colour[i] < 0),
                key=lambda i: (popcount(used[i]), degree[i], -i))
        for c in range(k + 1):
            # best may have dropped inside an earlier branch
            if max(k, c + 1) >= best[0]:
                break
            if (used[v] >> c) & 1:
                continue
            colour[v] = c
            touched = [u for u in bits(rows[v]) if not (used[u] >> c) & 1]
            for u in touched:
                used[u] |= 1 << c
            done = search(coloured + 1, max(k, c + 1))
            for u in touched:
                used[u] &= ~(1 << c)
            colour[v] = -1
            if done:
                return True
        return False

    if best[0] > lower:
        search(0, 0)
    return best[1]


def chromatic_number(G: Graph, cap: Optional[int] = None) -> int:
    """
    chi(G). False twins are merged first (they may share a colour); if DSATUR
    meets the clique bound the search stops, otherwise an exact backtracking
    search runs on graphs within the cap.
    """
    if G.order == 0:
        return 0
    cap = CAPS['color'] if cap is None else cap
    kernel, _ = _collapse(G, False, True)
    lower = clique_number(kernel, cap)
    greedy = _dsatur(list(kernel.rows))
    upper = max(greedy) + 1
    if upper == lower:
        return upper
    if kernel.order > cap:
        raise TooLargeError(
            f"Exact colouring needs {kernel.order} vertices (cap {cap}); bounds {lower}..{upper}",
            size=kernel.order, cap=cap,
        )
    logger.debug(f"Exact colouring of {kernel!r}, bounds {lower}..{upper}")
    return max(_exact_colouring(list(kernel.rows), lower, greedy)) + 1


def is_weakly_perfect(G: Graph, cap: Optional[int] = None) -> bool:
    """chi(G) == omega(G) for G itself."""
    return chromatic_number(G, cap) == clique_number(G, cap)


# --- Distances ---

def is_connected(G: Graph) -> bool:
    """The graph with no vertices counts as connected."""
    return G.order == 0 or nx.is_connected(G.to_networkx())


def diameter(G: Graph) -> float:
    """Largest distance; math.inf when disconnected, 0 for at most one vertex."""
    if G.order <= 1:
        return 0
    g = G.to_networkx()
    if not nx.is_connected(g):
        return math.inf
    return nx.diameter(g)


def farthest_pair(G: Graph) -> Optional[Certificate]:
    """
    A 'distance' certificate [a, b, d] for two vertices at maximum distance;
    d is math.inf for an unreachable pair. None below two vertices.
    """
    if G.order < 2:
        return None
    best = (0, 0, -1)
    for s in range(G.order):
        dist = bfs_distances(G, s)
        if len(dist) < G.order:
            t = next(i for i in range(G.order) if i not in dist)
            return Certificate('distance', [G.vertices[s], G.vertices[t], math.inf])
        t = max(dist, key=lambda i: (dist[i], -i))
        if dist[t] > best[2]:
            best = (s, t, dist[t])
    s, t, d = best
    return Certificate('distance', [G.vertices[s], G.vertices[t], d])


# --- Isomorphism and equality ---

def graph_invariants(G: Graph) -> Dict[str, Any]:
    """Isomorphism invariants, cheapest first."""
    return {
        'order': G.order,
        'edges': G.edge_count(),
        'degrees': sorted(G.degrees()),
        'wl-hash': nx.weisfeiler_lehman_graph_hash(G.to_networkx()),
    }


def distinguishing_invariant(G: Graph, H: Graph) -> Optional[Certificate]:
    """The first invariant on which G and H differ, as an 'invariant' certificate."""
    inv_g, inv_h = graph_invariants(G), graph_invariants(H)
    for name in inv_g:
        if inv_g[name] != inv_h[name]:
            return Certificate('invariant', [name, inv_g[name], inv_h[name]])
    return None


def are_isomorphic(G: Graph, H: Graph, cap: Optional[int] = None) -> Tuple[bool, Certificate]:
    """
    VF2 isomorphism test. On success the certificate maps G labels to H labels;
    otherwise it names an invariant that differs, or is a bare 'non-isomorphic'
    record when every invariant agrees.
    """
    cap = CAPS['isomorphism'] if cap is None else cap
    size = max(G.order, H.order)
    if size > cap:
        raise TooLargeError(f"Isomorphism check on {size} vertices (cap {cap})", size=size, cap=cap)
    cert = distinguishing_invariant(G, H)
    if cert is not None:
        return False, cert
    matcher = nx.isomorphism.GraphMatcher(G.to_networkx(), H.to_networkx())
    if not matcher.is_isomorphic():
        logger.debug(f"{G!r} and {H!r} agree on every invariant but are not isomorphic")
        return False, Certificate('non-isomorphic', [])
    return True, Certificate('mapping', {G.vertices[g]: H.vertices[h] for g, h in sorted(matcher.mapping.items())})


def graphs_equal_labeled(G: Graph, H: Graph) -> Tuple[bool, Optional[Certificate]]:
    """Identical labels and edges; otherwise the first discrepancy in label order."""
    only_g = sorted(set(G.vertices) - set(H.vertices), key=label_key)
    only_h = sorted(set(H.vertices) - set(G.vertices), key=label_key)
    if only_g or only_h:
        side, v = ('first', only_g[0]) if only_g else ('second', only_h[0])
        return False, Certificate('discrepancy', ['vertex', v, side])
    for a in sorted(G.vertices, key=label_key):
        for b in sorted(G.vertices, key=label_key):
            if a != b and G.has_edge(a, b) != H.has_edge(a, b):
                side = 'first' if G.has_edge(a, b) else 'second'
                return False, Certificate('discrepancy', ['edge', [a, b], side])
    return True, None


# --- Certificate checks ---

def _is_induced_cycle(G: Graph, labels: List[Label]) -> bool:
    if len(labels) < 3 or len(set(labels)) != len(labels) or any(v not in G for v in labels):
        return False
    k = len(labels)
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if G.has_edge(labels[i], labels[j]) != consecutive:
                return False
    return True


def validate_certificate(G: Graph, cert: Certificate, other: Optional[Graph] = None) -> bool:
    """Re-check a certificate against G (and H for mappings and discrepancies)."""
    kind, data = cert.kind, cert.data
    if kind == 'peo':
        if len(data) != G.order or set(data) != set(G.vertices):
            return False
        pos = {v: i for i, v in enumerate(data)}
        for v in data:
            later = [u for u in G.neighbors(v) if pos[u] > pos[v]]
            if not G.is_clique(G.mask_of(later)):
                return False
        return True
    if kind == 'cycle':
        return len(data) >= 4 and _is_induced_cycle(G, data)
    if kind == 'hole':
        return len(data) >= 5 and len(data) % 2 == 1 and _is_induced_cycle(G, data)
    if kind == 'antihole':
        return len(data) >= 5 and len(data) % 2 == 1 and _is_induced_cycle(complement(G), data)
    if kind == 'clique':
        return all(v in G for v in data) and G.is_clique(G.mask_of(data))
    if kind == 'coloring':
        return set(data) == set(G.vertices) and all(data[a] != data[b] for a, b in G.edge_list())
    if kind == 'mapping':
        if other is None or set(data) != set(G.vertices) or set(data.values()) != set(other.vertices):
            return False
        return all(G.has_edge(a, b) == other.has_edge(data[a], data[b])
                   for a in G.vertices for b in G.vertices if a != b)
    if kind == 'invariant':
        if other is None:
            return False
        name, value_g, value_h = data
        inv_g, inv_h = graph_invariants(G), graph_invariants(other)
        return value_g != value_h and inv_g.get(name) == value_g and inv_h.get(name) == value_h
    if kind == 'non-isomorphic':
        return other is not None and not nx.is_isomorphic(G.to_networkx(), other.to_networkx())
    if kind == 'distance':
        a, b, d = data
        if a not in G or b not in G:
            return False
        return bfs_distances(G, G.index(a)).get(G.index(b), math.inf) == d
    if kind == 'discrepancy':
        if other is None:
            return False
        what, item, side = data
        first, second = (G, other) if side == 'first' else (other, G)
        if what == 'vertex':
            return item in first and item not in second
        a, b = item
        return first.has_edge(a, b) and not (a in second and b in second and second.has_edge(a, b))
    raise ValueError(f"Unknown certificate kind {kind!r}")
