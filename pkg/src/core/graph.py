"""
Finite simple undirected graphs with stable vertex labels.

Adjacency is stored as one integer bitset per vertex (bit j of ``rows[i]`` is
set iff vertices i and j are adjacent). Vertices are kept in canonical label
order so that every construction of the same graph yields the same rows.
"""

from __future__ import annotations

import logging
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.core.errors import GraphError

logger = logging.getLogger(__name__)

Label = Hashable


def label_key(label: Any) -> Tuple:
    """Total sort key over the label types used in this package (ints, strings, tuples, IndexSets)."""
    if isinstance(label, bool):
        return (0, int(label))
    if isinstance(label, int):
        return (0, label)
    if isinstance(label, tuple):
        return (1, tuple(label_key(x) for x in label))
    if isinstance(label, str):
        return (2, label)
    return (3, type(label).__name__, label)


def popcount(x: int) -> int:
    return bin(x).count('1')


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """
    Immutable simple graph.

    Attributes
    ----------
    vertices : tuple
        Labels in canonical order.
    rows : tuple of int
        Bitset adjacency rows aligned with ``vertices``.
    flagged_empty : bool
        Set on zero-divisor graphs of posets without nonzero zero-divisors.
    relabeled : bool
        Set by ``join`` when colliding labels had to be tagged.
    """

    __slots__ = ('vertices', 'rows', '_index', 'flagged_empty', 'relabeled')

    def __init__(self, vertices: Sequence[Label], rows: Sequence[int],
                 flagged_empty: bool = False, relabeled: bool = False):
        vertices = tuple(vertices)
        rows = tuple(int(r) for r in rows)
        if len(vertices) != len(rows):
            raise GraphError(f"{len(vertices)} labels but {len(rows)} adjacency rows")
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphError("Vertex labels must be unique")
        full = (1 << len(vertices)) - 1
        for i, r in enumerate(rows):
            if r & ~full:
                raise GraphError(f"Row of {vertices[i]!r} points outside the vertex set")
            if (r >> i) & 1:
                raise GraphError(f"Loop at {vertices[i]!r}")
            for j in bits(r):
                if not (rows[j] >> i) & 1:
                    raise GraphError(f"Asymmetric adjacency between {vertices[i]!r} and {vertices[j]!r}")
        self.vertices = vertices
        self.rows = rows
        self._index = index
        self.flagged_empty = flagged_empty
        self.relabeled = relabeled

    # --- Constructors ---

    @classmethod
    def from_predicate(cls, labels: Iterable[Label], adjacent: Callable[[Label, Label], bool],
                       **flags) -> 'Graph':
        """Build on sorted labels with an edge wherever ``adjacent(a, b)`` holds (a != b)."""
        vertices = sorted(labels, key=label_key)
        n = len(vertices)
        rows = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if adjacent(vertices[i], vertices[j]):
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        return cls(vertices, rows, **flags)

    @classmethod
    def from_edges(cls, labels: Iterable[Label], edges: Iterable[Tuple[Label, Label]],
                   **flags) -> 'Graph':
        vertices = sorted(labels, key=label_key)
        index = {v: i for i, v in enumerate(vertices)}
        rows = [0] * len(vertices)
        for a, b in edges:
            if a == b:
                raise GraphError(f"Loop at {a!r}")
            i, j = index[a], index[b]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(vertices, rows, **flags)

    @classmethod
    def from_rows(cls, labels: Sequence[Label], rows: Sequence[int], **flags) -> 'Graph':
        """Reorder arbitrary (labels, rows) into canonical label order."""
        order = sorted(range(len(labels)), key=lambda i: label_key(labels[i]))
        position = {old: new for new, old in enumerate(order)}
        new_rows = []
        for old in order:
            r = 0
            for j in bits(rows[old]):
                r |= 1 << position[j]
            new_rows.append(r)
        return cls([labels[i] for i in order], new_rows, **flags)

    # --- Queries ---

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.vertices)) - 1

    def index(self, label: Label) -> int:
        return self._index[label]

    def __contains__(self, label: Label) -> bool:
        return label in self._index

    def has_edge(self, a: Label, b: Label) -> bool:
        return bool((self.rows[self._index[a]] >> self._index[b]) & 1)

    def neighbors(self, label: Label) -> List[Label]:
        return [self.vertices[j] for j in bits(self.rows[self._index[label]])]

    def degree(self, label: Label) -> int:
        return popcount(self.rows[self._index[label]])

    def degrees(self) -> List[int]:
        return [popcount(r) for r in self.rows]

    def edge_indices(self) -> List[Tuple[int, int]]:
        """Edges as index pairs (i < j), lexicographically sorted."""
        return [(i, j) for i, r in enumerate(self.rows) for j in bits(r >> (i + 1) << (i + 1))]

    def edge_list(self) -> List[Tuple[Label, Label]]:
        return [(self.vertices[i], self.vertices[j]) for i, j in self.edge_indices()]

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def is_clique(self, mask: int) -> bool:
        return all((self.rows[i] | (1 << i)) & mask == mask for i in bits(mask))

    def is_independent(self, mask: int) -> bool:
        return all(not (self.rows[i] & mask) for i in bits(mask))

    def mask_of(self, labels: Iterable[Label]) -> int:
        m = 0
        for v in labels:
            m |= 1 << self._index[v]
        return m

    def labels_of(self, mask: int) -> List[Label]:
        return [self.vertices[i] for i in bits(mask)]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and set(self.vertices) == set(other.vertices)
                and set(map(frozenset, self.edge_list())) == set(map(frozenset, other.edge_list())))

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.edge_count()))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.edge_count()})"

    # --- Derived graphs ---

    def induced_subgraph(self, mask: int) -> 'Graph':
        """Subgraph induced on the vertices whose bits are set in mask."""
        keep = list(bits(mask))
        position = {old: new for new, old in enumerate(keep)}
        rows = []
        for old in keep:
            r = 0
            for j in bits(self.rows[old] & mask):
                r |= 1 << position[j]
            rows.append(r)
        return Graph([self.vertices[i] for i in keep], rows)

    def relabel(self, mapping: Dict[Label, Label]) -> 'Graph':
        """Copy with labels replaced through mapping (must stay injective)."""
        labels = [mapping.get(v, v) for v in self.vertices]
        return Graph.from_rows(labels, self.rows, flagged_empty=self.flagged_empty, relabeled=self.relabeled)

    def to_networkx(self):
        import networkx as nx
        g = nx.Graph()
        g.add_nodes_from(range(self.order))
        g.add_edges_from(self.edge_indices())
        return g


def complete(labels: Iterable[Label]) -> Graph:
    """K_t on the given labels."""
    return Graph.from_predicate(labels, lambda a, b: True)


def empty_graph(labels: Iterable[Label] = ()) -> Graph:
    """Edgeless graph on the given labels."""
    return Graph.from_predicate(labels, lambda a, b: False)


def cycle(labels: Sequence[Label]) -> Graph:
    """Cycle through labels in the given order."""
    labels = list(labels)
    k = len(labels)
    return Graph.from_edges(labels, [(labels[i], labels[(i + 1) % k]) for i in range(k)] if k > 2 else [])


def path(labels: Sequence[Label]) -> Graph:
    labels = list(labels)
    return Graph.from_edges(labels, list(zip(labels, labels[1:])))


def complete_bipartite(left: Sequence[Label], right: Sequence[Label]) -> Graph:
    return Graph.from_edges(list(left) + list(right), [(a, b) for a in left for b in right])


def bfs_distances(graph: Graph, source: int, within: Optional[int] = None) -> Dict[int, int]:
    """Layered BFS on bitsets from vertex index source, optionally restricted to a vertex mask."""
    allowed = graph.full_mask if within is None else within
    seen = 1 << source
    frontier = seen
    dist = {source: 0}
    level = 0
    while frontier:
        level += 1
        nxt = 0
        for i in bits(frontier):
            nxt |= graph.rows[i]
        nxt &= allowed & ~seen
        for j in bits(nxt):
            dist[j] = level
        seen |= nxt
        frontier = nxt
    return dist


def shortest_path(graph: Graph, source: int, target: int, within: int) -> Optional[List[int]]:
    """Shortest path source..target using only vertices in within (endpoints included); None if none."""
    allowed = within | (1 << source) | (1 << target)
    parent = {source: -1}
    frontier = 1 << source
    seen = frontier
    while frontier and target not in parent:
        nxt = 0
        for i in bits(frontier):
            new = graph.rows[i] & allowed & ~seen & ~nxt
            for j in bits(new):
                parent[j] = i
            nxt |= new
        seen |= nxt
        frontier = nxt
    if target not in parent:
        return None
    out = [target]
    while parent[out[-1]] != -1:
        out.append(parent[out[-1]])
    return out[::-1]
