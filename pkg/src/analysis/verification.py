"""
Machine checks of the component-graph identities over (q, n) grids.

Every check takes (q, n, caps) and returns (passed, detail, witness). ``run_check``
wraps one check with timing and error mapping; ``run_suite`` fans a grid of
checks out over a thread pool and returns the results in report order.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.analysis.props import (
    are_isomorphic, chromatic_number, clique_number, farthest_pair, graphs_equal_labeled,
    is_chordal, is_perfect, validate_certificate,
)
from src.analysis.quotient import neighborhood_quotient, neighborhood_quotient_with_classes, reduce, reduce_with_classes
from src.core.config import CAPS, CHAIN_REPLACE_CORPUS, CHECK_IDS, STATUS_FAIL, STATUS_PASS, STATUS_SKIPPED
from src.core.errors import NotALatticeError, TooLargeError
from src.core.graph import Graph, complete
from src.core.order import (
    Poset, atom_partition, atoms, annihilator_order, boolean_lattice, build_L, chain_replace,
    compress, dual, enumerate_lattices, is_0_distributive, is_1_distributive, is_boolean_lattice,
)
from src.core.vspace import IndexSet, all_vectors, build_ig, build_ug, class_sizes, full_class, partition_classes
from src.core.zdg import complement, join, ring_zdg, zdg_poset
from src.reports.serialization import to_jsonable

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, str, Any]


@dataclass
class CheckResult:
    """One report entry: a check run at one (q, n)."""

    check_id: str
    q: int
    n: int
    status: str
    detail: str = ''
    witness: Any = None
    elapsed: float = 0.0

    @property
    def failed(self) -> bool:
        return self.status == STATUS_FAIL

    def to_record(self) -> Dict[str, Any]:
        return {
            'check': self.check_id,
            'q': self.q,
            'n': self.n,
            'status': self.status,
            'detail': self.detail,
            'witness': to_jsonable(self.witness),
            'elapsed': round(self.elapsed, 4),
        }


def _caps(caps: Optional[Dict[str, int]]) -> Dict[str, int]:
    merged = dict(CAPS)
    merged.update(caps or {})
    return merged


def _ig_side(q: int, n: int) -> Tuple[Graph, Graph]:
    return build_ig(q, n), join(complement(zdg_poset(build_L(q, n))), complete(full_class(q, n)))


# --- Graph identities ---

def check_igv(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """IG(V) equals G^c(L) v K_t as labelled graphs."""
    ig, expected = _ig_side(q, n)
    ok, cert = graphs_equal_labeled(ig, expected)
    if ok:
        return True, f"{ig.order} vertices, {ig.edge_count()} edges", None
    return False, "IG(V) differs from G^c(L) v K_t", cert


def check_ugv(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """UG(V) equals G(dual L) v K_t as labelled graphs."""
    ug = build_ug(q, n)
    expected = join(zdg_poset(dual(build_L(q, n))), complete(full_class(q, n)))
    ok, cert = graphs_equal_labeled(ug, expected)
    if ok:
        return True, f"{ug.order} vertices, {ug.edge_count()} edges", None
    return False, "UG(V) differs from G(dual L) v K_t", cert


def check_gamma_iso(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """IG(V) is isomorphic to Gamma^c(F^n) v K_t."""
    ig = build_ig(q, n)
    expected = join(complement(ring_zdg(q, n)), complete(full_class(q, n)))
    ok, cert = are_isomorphic(ig, expected, caps['isomorphism'])
    if ok:
        return True, f"mapping on {ig.order} vertices", None
    return False, "no isomorphism IG(V) -> Gamma^c(F^n) v K_t", cert


def check_reduced(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """IG_red is Gamma^c(Z_2^n) v K_1 and [UG] is Gamma(Z_2^n) v K_t, up to isomorphism."""
    t = len(full_class(q, n))
    pairs = [
        ('IG_red', reduce(build_ig(q, n)), join(complement(ring_zdg(2, n)), complete(['k1']))),
        ('[UG]', neighborhood_quotient(build_ug(q, n)),
         join(ring_zdg(2, n), complete([f'k{i + 1}' for i in range(t)]))),
    ]
    for name, got, expected in pairs:
        ok, cert = are_isomorphic(got, expected, caps['isomorphism'])
        if not ok:
            return False, f"{name} not isomorphic to its Z_2^n model", cert
    return True, f"IG_red on {pairs[0][1].order} vertices, [UG] on {pairs[1][1].order}", None


def check_boolean_compress(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """[L] is a Boolean lattice on 2^n classes and G([L]) is isomorphic to Gamma(Z_2^n)."""
    compressed = compress(build_L(q, n))
    if compressed.n != 1 << n or not is_boolean_lattice(compressed):
        return False, f"[L] has {compressed.n} classes and is not Boolean of rank {n}", {
            'classes': [str(k) for k in compressed.classes]
        }
    ok, cert = are_isomorphic(zdg_poset(compressed), ring_zdg(2, n), caps['isomorphism'])
    if not ok:
        return False, "G([L]) not isomorphic to Gamma(Z_2^n)", cert
    return True, f"[L] Boolean with {compressed.n} classes", None


# --- Lattice constructions ---

@lru_cache(maxsize=None)
def _chain_replace_corpus(max_size: int, lengths: Tuple[int, ...]) -> Outcome:
    corpus = enumerate_lattices(max_size)
    tried = 0
    for L in corpus:
        zero_dist = is_0_distributive(L)
        one_dist = is_1_distributive(L)
        for x in range(L.n):
            for m in lengths:
                tried += 1
                witness = {'elements': list(L.elements), 'covers': L.hasse_covers(),
                           'element': L.elements[x], 'length': m}
                try:
                    out = chain_replace(L, x, m)
                except NotALatticeError as e:
                    return False, f"chain replacement is not a lattice: {e}", witness
                if not Poset.is_partial_order(out.leq):
                    return False, "chain replacement is not a partial order", witness
                if zero_dist and not is_0_distributive(out):
                    return False, "0-distributivity lost", witness
                if one_dist and not is_1_distributive(out):
                    return False, "1-distributivity lost", witness
    return True, f"{len(corpus)} lattices, {tried} replacements", None


def check_chain_replace(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """Chain replacement keeps lattices lattices and keeps 0-/1-distributivity (independent of q, n)."""
    return _chain_replace_corpus(CHAIN_REPLACE_CORPUS['max_size'], tuple(CHAIN_REPLACE_CORPUS['chain_lengths']))


def check_atom_classes(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """Atom classes of L against G(L): independence, complete bipartite links, equal degrees, disjoint keys, atoms."""
    L = build_L(q, n)
    G = zdg_poset(L)
    classes = {}
    for key, members in atom_partition(L).items():
        labels = [L.elements[i] for i in members if L.elements[i] in G]
        if labels:
            classes[key] = labels
    keys = list(classes)
    masks = {key: G.mask_of(labels) for key, labels in classes.items()}

    for key in keys:
        if not G.is_independent(masks[key]):
            return False, f"class {key} is not independent", {'class': str(key)}
        degrees = {G.degree(v) for v in classes[key]}
        if len(degrees) > 1:
            return False, f"class {key} has unequal degrees {sorted(degrees)}", {'class': str(key)}
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            links = sum(bin(G.rows[G.index(v)] & masks[b]).count('1') for v in classes[a])
            if links not in (0, len(classes[a]) * len(classes[b])):
                return False, f"classes {a} and {b} are partially linked", {'classes': [str(a), str(b)]}
            if (links > 0) != a.isdisjoint(b):
                return False, f"adjacency of {a} and {b} disagrees with key disjointness", {
                    'classes': [str(a), str(b)]
                }

    compressed = compress(L)
    expected = sorted(compressed.class_of(a) for a in atoms(L))
    got = sorted(compressed.elements[i] for i in atoms(compressed))
    if got != expected:
        return False, "atoms of [L] are not the classes of the atoms of L", {
            'atoms': [str(k) for k in got], 'expected': [str(k) for k in expected]
        }
    return True, f"{len(keys)} vertex classes", None


# --- Chordality, perfection, distances ---

def check_chordal_cor(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """IG(V) chordal iff n <= 3; UG(V) chordal iff n = 1 or (n in {2, 3} and q = 2)."""
    expected = {'IG': n <= 3, 'UG': n == 1 or (n in (2, 3) and q == 2)}
    witnesses = {}
    for name, graph in (('IG', build_ig(q, n)), ('UG', build_ug(q, n))):
        chordal, cert = is_chordal(graph)
        if not validate_certificate(graph, cert):
            return False, f"{name}: invalid {cert.kind} certificate", cert
        if chordal != expected[name]:
            return False, f"{name}: chordal={chordal}, expected {expected[name]}", cert
        witnesses[name] = cert
    return True, f"IG chordal={expected['IG']}, UG chordal={expected['UG']}", witnesses


def check_perfect_cor(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """IG(V) and UG(V) are perfect iff n <= 4."""
    expected = n <= 4
    witnesses = {}
    for name, graph in (('IG', build_ig(q, n)), ('UG', build_ug(q, n))):
        perfect, cert = is_perfect(graph, caps['perfect'])
        if cert is not None:
            if not validate_certificate(graph, cert):
                return False, f"{name}: invalid {cert.kind} certificate", cert
            witnesses[name] = cert
        if perfect != expected:
            return False, f"{name}: perfect={perfect}, expected {expected}", cert or {'graph': name, 'perfect': perfect}
    return True, f"perfect={expected}", witnesses or None


def check_diameter(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """G(L) connected with diameter <= 3; IG(V), UG(V) connected with diameter <= 2 for n >= 2."""
    if n < 2:
        return True, "Z(L) = {0}: nothing to check", None
    found = {}
    for name, graph, bound in (('G(L)', zdg_poset(build_L(q, n)), 3),
                               ('IG', build_ig(q, n), 2), ('UG', build_ug(q, n), 2)):
        cert = farthest_pair(graph)
        d = cert.data[2]
        found[name] = d
        if d > bound:
            return False, f"{name}: diameter {d} exceeds {bound}", cert
    return True, ', '.join(f"{k} diam {v}" for k, v in found.items()), None


def check_weakly_perfect(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """chi = omega for IG(V) and UG(V)."""
    values = {}
    for name, graph in (('IG', build_ig(q, n)), ('UG', build_ug(q, n))):
        omega = clique_number(graph, caps['color'])
        chi = chromatic_number(graph, caps['color'])
        values[name] = (omega, chi)
        if omega != chi:
            return False, f"{name}: omega={omega}, chi={chi}", {'graph': name, 'omega': omega, 'chi': chi}
    return True, ', '.join(f"{k} omega=chi={v[0]}" for k, v in values.items()), None


# --- Supplementary checks ---

def check_partition(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """|V_I| = (q-1)^|I| and the classes partition V."""
    classes = partition_classes(q, n)
    sizes = class_sizes(q, n)
    for key, members in classes.items():
        if len(members) != sizes[key]:
            return False, f"|V_{key}| = {len(members)}, expected {sizes[key]}", {'class': str(key)}
    flat = [a for members in classes.values() for a in members]
    if len(flat) != len(set(flat)) or set(flat) != set(all_vectors(q, n)):
        return False, "classes do not partition V", {'covered': len(set(flat)), 'total': q ** n}
    return True, f"{len(classes)} classes over {q ** n} vectors", None


def check_distributive(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """L and its dual are 0- and 1-distributive lattices."""
    L = build_L(q, n)
    for name, lattice in (('L', L), ('dual L', dual(L))):
        for prop, test in (('0-distributive', is_0_distributive), ('1-distributive', is_1_distributive)):
            if not test(lattice):
                return False, f"{name} is not {prop}", {'lattice': name, 'property': prop}
    return True, f"|L| = {L.n}", None


def check_annihilator(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """The annihilator order on the classes of L equals index-set inclusion."""
    L = build_L(q, n)
    compressed = compress(L)
    by_perp = annihilator_order(L)
    if not np.array_equal(by_perp, compressed.leq):
        i, j = (int(x) for x in np.argwhere(by_perp != compressed.leq)[0])
        return False, "annihilator order disagrees with inclusion", {
            'pair': [str(compressed.elements[i]), str(compressed.elements[j])],
            'annihilator': bool(by_perp[i, j]), 'inclusion': bool(compressed.leq[i, j]),
        }
    return True, f"{compressed.n} classes agree", None


def _by_class(P: Poset, graph: Graph, classes: Dict[Any, List[Any]]) -> Graph:
    """Relabel a quotient (vertices are class representatives) by compressed-class key."""
    compressed = compress(P)
    return graph.relabel({rep: compressed.class_of(P.index(rep)) for rep in classes})


def check_quotient_compression(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """(G^c(L))_red = G^c([L]) and [G(P)] = G([P]) for P = L and its dual, as graphs on class keys."""
    L = build_L(q, n)
    red, classes = reduce_with_classes(complement(zdg_poset(L)))
    ok, cert = graphs_equal_labeled(_by_class(L, red, classes), complement(zdg_poset(compress(L))))
    if not ok:
        return False, "(G^c(L))_red differs from G^c([L])", cert
    for name, P in (('L', L), ('dual L', dual(L))):
        quotient, classes = neighborhood_quotient_with_classes(zdg_poset(P))
        ok, cert = graphs_equal_labeled(_by_class(P, quotient, classes), zdg_poset(compress(P)))
        if not ok:
            return False, f"[G({name})] differs from G([{name}])", cert
    return True, "quotients match the compressed posets", None


def atom_count_criteria(P: Poset) -> Dict[str, bool]:
    """
    Chordality of G(P) and G^c(P) and perfection of G(P) as predicted from
    the atoms of P alone; meaningful when [P] is Boolean.
    """
    compressed = compress(P)
    k = len(atoms(P))
    singles = [len(compressed.classes[IndexSet.of([i])]) for i in range(1, k + 1)]
    return {
        'G chordal': k == 1 or (k == 2 and 1 in singles) or (k == 3 and singles == [1, 1, 1]),
        'G^c chordal': k <= 3,
        'G perfect': k <= 4,
    }


def _stretched_boolean(k: int, lengths: Sequence[int]) -> Poset:
    """Boolean lattice of rank k with atom i replaced by a chain of lengths[i - 1]."""
    P = boolean_lattice(k)
    for i, m in enumerate(lengths, start=1):
        P = chain_replace(P, P.index(IndexSet.of([i])), m)
    return P


def criteria_posets(q: int, n: int) -> List[Tuple[str, Poset]]:
    """L, its dual, and Boolean lattices of rank 1..n with stretched atom classes."""
    L = build_L(q, n)
    posets = [('L', L), ('dual L', dual(L))]
    for k in range(1, n + 1):
        for lengths in sorted({(1,) * k, (2,) + (1,) * (k - 1), (2,) * k}):
            posets.append((f"B{k} stretched {list(lengths)}", _stretched_boolean(k, lengths)))
    return posets


def check_atom_criteria(q: int, n: int, caps: Dict[str, int]) -> Outcome:
    """For posets with [P] Boolean, G(P) and G^c(P) chordality and G(P) perfection follow the atom counts."""
    posets = criteria_posets(q, n)
    for name, P in posets:
        if not is_boolean_lattice(compress(P)):
            return False, f"[{name}] is not Boolean", {'poset': name, 'covers': P.hasse_covers()}
        G = zdg_poset(P)
        found = {
            'G chordal': is_chordal(G),
            'G^c chordal': is_chordal(complement(G)),
            'G perfect': is_perfect(G, caps['perfect']),
        }
        for prop, predicted in atom_count_criteria(P).items():
            value, cert = found[prop]
            if value != predicted:
                return False, f"{name}: {prop}={value}, atom count predicts {predicted}", {
                    'poset': name, 'property': prop, 'certificate': cert,
                }
    return True, f"{len(posets)} posets agree with the atom counts", None


CHECKS: Dict[str, Callable[[int, int, Dict[str, int]], Outcome]] = {
    'igv': check_igv,
    'ugv': check_ugv,
    'gamma-iso': check_gamma_iso,
    'reduced': check_reduced,
    'boolean-compress': check_boolean_compress,
    'chain-replace': check_chain_replace,
    'lemma22': check_atom_classes,
    'chordal-cor': check_chordal_cor,
    'perfect-cor': check_perfect_cor,
    'diameter': check_diameter,
    'weakly-perfect': check_weakly_perfect,
    'partition': check_partition,
    'distributive': check_distributive,
    'annihilator': check_annihilator,
    'remarks': check_quotient_compression,
    'atom-criteria': check_atom_criteria,
}
assert tuple(CHECKS) == CHECK_IDS


def run_check(check_id: str, q: int, n: int, caps: Optional[Dict[str, int]] = None) -> CheckResult:
    """Run one check; caps exceeded give SKIPPED, any other error gives FAIL with its text."""
    caps = _caps(caps)
    start = time.perf_counter()
    try:
        passed, detail, witness = CHECKS[check_id](q, n, caps)
        status = STATUS_PASS if passed else STATUS_FAIL
    except TooLargeError as e:
        logger.warning(f"{check_id} q={q} n={n} skipped: {e}")
        status, detail, witness = STATUS_SKIPPED, str(e), {'size': e.size, 'cap': e.cap}
    except Exception as e:
        logger.exception(f"{check_id} q={q} n={n} raised {type(e).__name__}")
        status, detail, witness = STATUS_FAIL, f"{type(e).__name__}: {e}", {'exception': type(e).__name__}
    elapsed = time.perf_counter() - start
    if status == STATUS_FAIL:
        logger.error(f"{check_id} q={q} n={n} FAILED: {detail}")
    else:
        logger.info(f"{check_id} q={q} n={n} {status} ({elapsed:.2f}s)")
    return CheckResult(check_id, q, n, status, detail, witness, elapsed)


def run_suite(qs: Iterable[int], ns: Iterable[int], check_ids: Sequence[str] = CHECK_IDS,
              caps: Optional[Dict[str, int]] = None, max_workers: int = 4) -> List[CheckResult]:
    """Run every check at every grid point in parallel; results come back in (q, n, check) order."""
    tasks = [(check_id, q, n) for q in qs for n in ns for check_id in check_ids]
    if not tasks:
        logger.info("Empty grid: nothing to verify")
        return []
    results: Dict[Tuple[str, int, int], CheckResult] = {}
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        future_to_task = {executor.submit(run_check, *task, caps): task for task in tasks}
        for future in future_to_task:
            task = future_to_task[future]
            try:
                results[task] = future.result()
            except Exception as e:
                logger.error(f"Check {task} crashed: {e}", exc_info=True)
                results[task] = CheckResult(*task, STATUS_FAIL, f"FAILED: {type(e).__name__}",
                                            {'exception': type(e).__name__})
    return [results[task] for task in tasks]
