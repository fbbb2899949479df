"""
Finite posets and lattices.

A poset is a list of element labels plus a read-only boolean matrix ``leq``
with ``leq[i, j]`` true iff element i <= element j. Operations take and return
element *indices*; ``Poset.index``/``Poset.labels_of`` translate to labels.
The cover (Hasse) relation is derived on demand.
"""

from __future__ import annotations

import itertools
import logging
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import (
    EmptyInputError, InvalidElementError, MissingBoundError, NoZeroError,
    NotALatticeError, PartialOrderError,
)
from src.core.field import field_new
from src.core.vspace import IndexSet, partition_classes, zero_vector

logger = logging.getLogger(__name__)

ElementSet = FrozenSet[int]

# Label of the top of the constructed lattice (it stands for the class of units)
TOP_LABEL = '1'


class Poset:
    """
    Immutable finite partial order.

    Parameters
    ----------
    elements : sequence of labels
        Unique hashable labels, index i <-> ``elements[i]``.
    leq : (n, n) boolean array
        ``leq[i, j]`` iff i <= j.
    check : bool
        Validate the partial order axioms (default True).
    """

    def __init__(self, elements: Sequence[Hashable], leq: np.ndarray, check: bool = True):
        leq = np.array(leq, dtype=bool)
        n = len(elements)
        if leq.shape != (n, n):
            raise PartialOrderError(f"Relation shape {leq.shape} does not match {n} elements")
        self.elements: Tuple[Hashable, ...] = tuple(elements)
        self._index = {label: i for i, label in enumerate(self.elements)}
        if len(self._index) != n:
            raise PartialOrderError("Element labels must be unique")
        if check and not self.is_partial_order(leq):
            raise PartialOrderError("Relation is not reflexive, antisymmetric and transitive")
        leq.flags.writeable = False
        self.leq = leq
        self.n = n

    # --- Constructors ---

    @classmethod
    def from_pairs(cls, elements: Sequence[Hashable], pairs: Iterable[Tuple[Hashable, Hashable]]) -> 'Poset':
        """Reflexive-transitive closure of the given (a <= b) label pairs."""
        index = {label: i for i, label in enumerate(elements)}
        n = len(elements)
        rel = np.eye(n, dtype=bool)
        for a, b in pairs:
            rel[index[a], index[b]] = True
        return cls(elements, transitive_closure(rel))

    @classmethod
    def chain(cls, labels: Sequence[Hashable]) -> 'Poset':
        n = len(labels)
        return cls(labels, np.triu(np.ones((n, n), dtype=bool)))

    @staticmethod
    def is_partial_order(rel: np.ndarray) -> bool:
        """Check reflexivity, antisymmetry and transitivity of a boolean matrix."""
        if not rel[np.diag_indices_from(rel)].all():
            return False
        if (rel & rel.T).sum() > len(rel):
            return False
        rel2 = (rel.astype(np.int32) @ rel.astype(np.int32)) > 0
        return not bool((rel2 & ~rel).any())

    # --- Labels ---

    def __len__(self) -> int:
        return self.n

    def index(self, label: Hashable) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InvalidElementError(f"{label!r} is not an element of the poset") from None

    def indices(self, labels: Iterable[Hashable]) -> ElementSet:
        return frozenset(self.index(x) for x in labels)

    def labels_of(self, indices: Iterable[int]) -> List[Hashable]:
        return [self.elements[i] for i in sorted(indices)]

    def _check_index(self, x: int) -> int:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.n:
            raise InvalidElementError(f"Element index {x!r} outside 0..{self.n - 1}")
        return int(x)

    # --- Bounds and covers ---

    @cached_property
    def zero(self) -> Optional[int]:
        """Index of the least element, or None."""
        hits = np.flatnonzero(self.leq.all(axis=1))
        return int(hits[0]) if len(hits) else None

    @cached_property
    def one(self) -> Optional[int]:
        """Index of the greatest element, or None."""
        hits = np.flatnonzero(self.leq.all(axis=0))
        return int(hits[0]) if len(hits) else None

    @cached_property
    def covers(self) -> np.ndarray:
        """covers[i, j] iff j covers i (i < j with nothing in between)."""
        lt = self.leq.copy()
        lt[np.diag_indices_from(lt)] = False
        between = (lt.astype(np.int32) @ lt.astype(np.int32)) > 0
        out = lt & ~between
        out.flags.writeable = False
        return out

    @cached_property
    def common_lower(self) -> np.ndarray:
        """common_lower[a, b] = |{a, b}^l|."""
        m = self.leq.astype(np.int32)
        out = m.T @ m
        out.flags.writeable = False
        return out

    def hasse_covers(self) -> List[Tuple[Hashable, Hashable]]:
        rows, cols = np.nonzero(self.covers)
        return [(self.elements[i], self.elements[j]) for i, j in zip(rows, cols)]

    def require_zero(self) -> int:
        if self.zero is None:
            raise NoZeroError("Poset has no least element")
        return self.zero

    def require_one(self) -> int:
        if self.one is None:
            raise MissingBoundError("Poset has no greatest element")
        return self.one

    # --- Derived posets ---

    def relabel(self, mapping: Dict[Hashable, Hashable]) -> 'Poset':
        labels = [mapping.get(x, x) for x in self.elements]
        cls = Lattice if isinstance(self, Lattice) else Poset
        return cls(labels, self.leq, check=False)

    def reversed(self) -> 'Poset':
        return Poset(self.elements, self.leq.T.copy(), check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poset) and self.elements == other.elements
                and np.array_equal(self.leq, other.leq))

    def __hash__(self) -> int:
        return hash((self.elements, self.leq.tobytes()))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(n={self.n})"


class Lattice(Poset):
    """Poset in which every pair has a meet and a join; tables are computed on construction."""

    def __init__(self, elements: Sequence[Hashable], leq: np.ndarray, check: bool = True):
        super().__init__(elements, leq, check=check)
        if self.n == 0:
            raise NotALatticeError("The empty poset is not a lattice")
        self.join = self._bound_table(self.leq)
        self.meet = self._bound_table(self.leq.T)

    def _bound_table(self, up: np.ndarray) -> np.ndarray:
        """Least upper bounds w.r.t. ``up`` (pass leq.T for greatest lower bounds)."""
        n = self.n
        by_upset = {up[i].tobytes(): i for i in range(n)}
        table = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            common = up[i] & up
            for j in range(i, n):
                key = common[j].tobytes()
                if key not in by_upset:
                    kind = 'join' if up is self.leq else 'meet'
                    raise NotALatticeError(
                        f"No {kind} for {self.elements[i]!r} and {self.elements[j]!r}"
                    )
                table[i, j] = table[j, i] = by_upset[key]
        table.flags.writeable = False
        return table

    @classmethod
    def from_poset(cls, poset: Poset) -> 'Lattice':
        return cls(poset.elements, poset.leq, check=False)


class CompressedPoset(Poset):
    """
    The poset [P]: class P_0 = {0} plus the nonempty atom classes P_I, ordered by
    inclusion of their index sets. Element labels are the IndexSet keys.
    """

    def __init__(self, source: Poset, classes: Dict[IndexSet, Tuple[int, ...]]):
        keys = list(classes)
        leq = np.array([[a.issubset(b) for b in keys] for a in keys], dtype=bool)
        super().__init__(keys, leq, check=False)
        self.source = source
        self.classes = dict(classes)
        self._class_of = {x: key for key, members in classes.items() for x in members}

    def class_of(self, x: int) -> IndexSet:
        """Key of the class containing element index x of the source poset."""
        return self._class_of[x]

    def member_labels(self, key: IndexSet) -> List[Hashable]:
        return [self.source.elements[i] for i in self.classes[key]]


# --- Helpers ---

def transitive_closure(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated boolean squaring."""
    closure = np.array(rel, dtype=bool) | np.eye(len(rel), dtype=bool)
    while True:
        step = (closure.astype(np.int32) @ closure.astype(np.int32)) > 0
        if np.array_equal(step, closure):
            return closure
        closure = step


def _as_index_list(P: Poset, A: Iterable[int]) -> List[int]:
    items = [P._check_index(x) for x in A]
    if not items:
        raise EmptyInputError("Cones are defined for nonempty element sets only")
    return items


# --- Cones, zero-divisors, annihilators ---

def lower_cone(P: Poset, A: Iterable[int]) -> ElementSet:
    """A^l = elements below every member of A."""
    cols = _as_index_list(P, A)
    return frozenset(int(i) for i in np.flatnonzero(P.leq[:, cols].all(axis=1)))


def upper_cone(P: Poset, A: Iterable[int]) -> ElementSet:
    """A^u = elements above every member of A."""
    rows = _as_index_list(P, A)
    return frozenset(int(i) for i in np.flatnonzero(P.leq[rows, :].all(axis=0)))


def zero_divisors(P: Poset) -> ElementSet:
    """Z(P) = {a | {a, b}^l = {0} for some b != 0}."""
    z = P.require_zero()
    trivial = P.common_lower == 1
    trivial[:, z] = False
    return frozenset(int(i) for i in np.flatnonzero(trivial.any(axis=1)))


def dense_elements(P: Poset) -> ElementSet:
    """P minus Z(P)."""
    return frozenset(range(P.n)) - zero_divisors(P)


def zdg_vertex_set(P: Poset) -> ElementSet:
    """Vertices of G(P): Z(P) minus {0}."""
    return zero_divisors(P) - {P.require_zero()}


def annihilator(P: Poset, a: int) -> ElementSet:
    """a^perp = {x | {a, x}^l = {0}}."""
    P.require_zero()
    a = P._check_index(a)
    return frozenset(int(i) for i in np.flatnonzero(P.common_lower[a] == 1))


# --- 0- and 1-distributivity ---

def _lattice_0_distributive(L: Lattice, bottom: int, meet: np.ndarray, join: np.ndarray) -> bool:
    for a in range(L.n):
        partners = np.flatnonzero(meet[a] == bottom)
        if len(partners) < 2:
            continue
        joins = join[np.ix_(partners, partners)]
        if not np.all(meet[a][joins] == bottom):
            return False
    return True


def _poset_0_distributive(P: Poset, leq: np.ndarray, bottom: int) -> bool:
    m = leq.astype(np.int32)
    trivial = (m.T @ m) == 1
    for a in range(P.n):
        partners = np.flatnonzero(trivial[a])
        for b, c in itertools.combinations_with_replacement(partners, 2):
            above = leq[b] & leq[c]
            # {a, {b,c}^u}^l; an empty upper cone leaves a^l
            below = leq[:, a] & leq[:, above].all(axis=1)
            if below.sum() != 1 or not below[bottom]:
                return False
    return True


def is_0_distributive(P: Poset, lattice_form: Optional[bool] = None) -> bool:
    """
    Lattices: a^b = 0 = a^c implies a^(b v c) = 0.
    Posets: {a,b}^l = {0} = {a,c}^l implies {a, {b,c}^u}^l = {0}.
    The lattice form is used by default whenever P is a Lattice.
    """
    bottom = P.require_zero()
    if lattice_form is None:
        lattice_form = isinstance(P, Lattice)
    if lattice_form:
        L = P if isinstance(P, Lattice) else Lattice.from_poset(P)
        return _lattice_0_distributive(L, bottom, L.meet, L.join)
    return _poset_0_distributive(P, P.leq, bottom)


def is_1_distributive(P: Poset, lattice_form: Optional[bool] = None) -> bool:
    """Dual of is_0_distributive (joins to 1, upper cones)."""
    top = P.require_one()
    if lattice_form is None:
        lattice_form = isinstance(P, Lattice)
    if lattice_form:
        L = P if isinstance(P, Lattice) else Lattice.from_poset(P)
        return _lattice_0_distributive(L, top, L.join, L.meet)
    return _poset_0_distributive(P, P.leq.T, top)


# --- Atoms and compression ---

def atoms(P: Poset) -> List[int]:
    """Elements covering 0, ascending by index."""
    z = P.require_zero()
    return [int(j) for j in np.flatnonzero(P.covers[z])]


def atom_partition(P: Poset) -> Dict[IndexSet, Tuple[int, ...]]:
    """
    Nonzero elements grouped by the set of atoms below them. Atom q_i is the
    i-th atom by index; keys are ordered by size, then mask.
    """
    z = P.require_zero()
    atom_list = atoms(P)
    groups: Dict[IndexSet, List[int]] = {}
    for x in range(P.n):
        if x == z:
            continue
        key = IndexSet.of(i + 1 for i, q in enumerate(atom_list) if P.leq[q, x])
        assert key.mask, f"Nonzero element {P.elements[x]!r} lies above no atom"
        groups.setdefault(key, []).append(x)
    return {key: tuple(groups[key]) for key in sorted(groups, key=lambda s: (len(s), s.mask))}


def compress(P: Poset) -> CompressedPoset:
    """[P] = {P_0} plus the atom classes, ordered by index-set inclusion."""
    z = P.require_zero()
    classes = {IndexSet(0): (z,)}
    classes.update(atom_partition(P))
    compressed = CompressedPoset(P, classes)
    logger.debug(f"Compressed {P!r} into {compressed.n} classes")
    return compressed


def annihilator_order(P: Poset) -> np.ndarray:
    """
    Order on the classes of compress(P): A <= B iff b^perp is a subset of a^perp
    for some a in A and some b in B; P_0 is below everything.
    """
    compressed = compress(P)
    perps = {x: annihilator(P, x) for x in range(P.n)}
    keys = list(compressed.classes)
    out = np.zeros((len(keys), len(keys)), dtype=bool)
    for i, a_key in enumerate(keys):
        for j, b_key in enumerate(keys):
            if not a_key.mask:
                out[i, j] = True
            elif b_key.mask:
                out[i, j] = any(perps[b] <= perps[a]
                                for a in compressed.classes[a_key] for b in compressed.classes[b_key])
    return out


# --- Lattice constructions ---

def is_lattice(P: Poset) -> bool:
    try:
        Lattice.from_poset(P)
    except NotALatticeError:
        return False
    return True


def is_boolean_lattice(P: Poset) -> bool:
    """True iff P is order-isomorphic to the power set of its atoms."""
    if P.zero is None or not is_lattice(P):
        return False
    atom_list = atoms(P)
    if P.n != 1 << len(atom_list):
        return False
    keys = [sum(1 << i for i, q in enumerate(atom_list) if P.leq[q, x]) for x in range(P.n)]
    if len(set(keys)) != P.n:
        return False
    return all(P.leq[x, y] == (keys[x] & ~keys[y] == 0) for x in range(P.n) for y in range(P.n))


def dual(L: Poset) -> Poset:
    """Order reversed; for a Lattice meet and join swap and so do 0 and 1."""
    if isinstance(L, Lattice):
        return Lattice(L.elements, L.leq.T.copy(), check=False)
    return L.reversed()


def chain_replace(L: Lattice, x: int, m: int, labels: Optional[Sequence[Hashable]] = None) -> Lattice:
    """
    Replace element x by a chain c_0 < ... < c_{m-1}: c_0 takes the relations
    below x, c_{m-1} the relations above x, and the rest follow by transitivity.
    The chain occupies x's position in the element order.
    """
    x = L._check_index(x)
    if m < 1:
        raise ValueError(f"Chain length must be >= 1, got {m}")
    if labels is None:
        labels = [L.elements[x]] if m == 1 else [(L.elements[x], i) for i in range(m)]
    labels = list(labels)
    if len(labels) != m:
        raise ValueError(f"Expected {m} chain labels, got {len(labels)}")

    old = [i for i in range(L.n) if i != x]
    elements = list(L.elements[:x]) + labels + list(L.elements[x + 1:])
    # position in the new order of each old element / chain element
    pos_old = {i: (i if i < x else i + m - 1) for i in old}
    pos_chain = [x + k for k in range(m)]

    N = L.n + m - 1
    leq = np.zeros((N, N), dtype=bool)
    old_idx = np.array([pos_old[i] for i in old], dtype=np.int64)
    leq[np.ix_(old_idx, old_idx)] = L.leq[np.ix_(old, old)]
    below_x = np.array([L.leq[i, x] for i in old], dtype=bool)
    above_x = np.array([L.leq[x, i] for i in old], dtype=bool)
    for k, c in enumerate(pos_chain):
        leq[old_idx[below_x], c] = True
        leq[c, old_idx[above_x]] = True
        leq[c, pos_chain[k:]] = True
    return Lattice(elements, leq, check=False)


def boolean_lattice(n: int) -> Lattice:
    """Power set of {1..n} ordered by inclusion, labels are IndexSets."""
    keys = IndexSet.all_subsets(n)
    leq = np.array([[a.issubset(b) for b in keys] for a in keys], dtype=bool)
    return Lattice(keys, leq, check=False)


def diamond() -> Lattice:
    """M_3: 0, three pairwise incomparable atoms, 1."""
    return Lattice.from_poset(Poset.from_pairs(
        ['0', 'a', 'b', 'c', '1'],
        [('0', 'a'), ('0', 'b'), ('0', 'c'), ('a', '1'), ('b', '1'), ('c', '1')],
    ))


def pentagon() -> Lattice:
    """N_5: 0 < a < b < 1 and 0 < c < 1."""
    return Lattice.from_poset(Poset.from_pairs(
        ['0', 'a', 'b', 'c', '1'],
        [('0', 'a'), ('a', 'b'), ('b', '1'), ('0', 'c'), ('c', '1')],
    ))


@lru_cache(maxsize=None)
def build_boolean_vlattice(q: int, n: int) -> Lattice:
    """[V]: the classes V_I ordered by inclusion of I, labelled by I."""
    field_new(q)
    if n < 1:
        raise ValueError(f"Dimension must be >= 1, got {n}")
    return boolean_lattice(n)


@lru_cache(maxsize=None)
def build_L(q: int, n: int) -> Lattice:
    """
    The lattice obtained from [V] by replacing each proper nonempty V_I with the
    chain of its vectors in lexicographic order; V_0 becomes 0 (labelled by the
    zero vector) and V_{1..n} becomes 1 (labelled TOP_LABEL).
    """
    classes = partition_classes(q, n)
    lattice = build_boolean_vlattice(q, n)
    full = IndexSet.full(n)
    for key in IndexSet.all_subsets(n):
        if key.mask == 0 or key == full:
            continue
        members = classes[key]
        lattice = chain_replace(lattice, lattice.index(key), len(members), labels=members)
    lattice = lattice.relabel({IndexSet(0): zero_vector(n), full: TOP_LABEL})
    logger.debug(f"Built L(q={q}, n={n}) with {lattice.n} elements")
    return lattice


# --- Corpus of small lattices ---

def _strict_orders(k: int) -> List[Tuple[Tuple[bool, ...], ...]]:
    """All strict partial orders on k labelled points, one per isomorphism class."""
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    seen = set()
    found = []
    perms = list(itertools.permutations(range(k)))
    for bits_ in range(1 << len(pairs)):
        rel = [[False] * k for _ in range(k)]
        for t, (i, j) in enumerate(pairs):
            if (bits_ >> t) & 1:
                rel[i][j] = True
        if any(rel[i][j] and rel[j][i] for i in range(k) for j in range(k)):
            continue
        if any(rel[i][j] and rel[j][l] and not rel[i][l]
               for i in range(k) for j in range(k) for l in range(k)):
            continue
        canon = min(
            tuple(tuple(rel[p[i]][p[j]] for j in range(k)) for i in range(k))
            for p in perms
        )
        if canon not in seen:
            seen.add(canon)
            found.append(canon)
    return found


def enumerate_lattices(max_size: int) -> List[Lattice]:
    """
    Every lattice with at most max_size elements, one per isomorphism class,
    ordered by size. Elements are labelled '0', 'x1', ..., 'xk', '1'.
    """
    corpus: List[Lattice] = []
    if max_size >= 1:
        corpus.append(Lattice(['0'], np.ones((1, 1), dtype=bool)))
    for k in range(0, max_size - 1):
        for rel in _strict_orders(k):
            labels = ['0'] + [f'x{i + 1}' for i in range(k)] + ['1']
            leq = np.eye(k + 2, dtype=bool)
            leq[0, :] = True
            leq[:, k + 1] = True
            for i in range(k):
                for j in range(k):
                    if rel[i][j]:
                        leq[i + 1, j + 1] = True
            try:
                corpus.append(Lattice(labels, leq))
            except NotALatticeError:
                continue
    logger.debug(f"Enumerated {len(corpus)} lattices with at most {max_size} elements")
    return corpus
