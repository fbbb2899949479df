"""
Arithmetic over the small finite fields GF(q) used to build vector spaces F^n.

Elements are integers in [0, q). For q = p^k the integer i stands for the
polynomial c_0 + c_1 x + ... + c_{k-1} x^{k-1} whose coefficients are the
base-p digits of i, reduced modulo a fixed irreducible polynomial. Index 0 is
the additive identity and index 1 the multiplicative identity, so element
enumeration is the same on every run.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from src.core.config import IRREDUCIBLE_POLYNOMIALS, SUPPORTED_FIELDS
from src.core.errors import UnsupportedCardinalityError

logger = logging.getLogger(__name__)


class Field:
    """
    Finite field GF(q) with precomputed addition, multiplication and inverse tables.

    Parameters
    ----------
    q : int
        Cardinality, one of ``SUPPORTED_FIELDS``.
    """

    def __init__(self, q: int):
        if q not in SUPPORTED_FIELDS:
            raise UnsupportedCardinalityError(
                f"GF({q}) is not supported. "
                f"Choose one of {sorted(SUPPORTED_FIELDS)}"
            )
        self.q = q
        self.p, self.k = SUPPORTED_FIELDS[q]
        # x - 0 stands in for the modulus of a prime field; never used to reduce
        self.modulus: Tuple[int, ...] = IRREDUCIBLE_POLYNOMIALS.get(q, (0, 1))
        self._build_tables()
        logger.debug(f"Built GF({q}) tables (p={self.p}, k={self.k}, modulus={self.modulus})")

    def _digits(self, a: int) -> List[int]:
        """Base-p coefficient list of element a, low degree first."""
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_digits(self, digits: List[int]) -> int:
        value = 0
        for c in reversed(digits):
            value = value * self.p + c
        return value

    def _poly_mul(self, a: int, b: int) -> int:
        """Polynomial product modulo the irreducible polynomial."""
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # modulus is monic of degree k
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for j, f in enumerate(self.modulus):
                    prod[d - k + j] = (prod[d - k + j] - c * f) % p
        return self._from_digits(prod[:k])

    def _build_tables(self) -> None:
        """Pre-compute lookup tables and validate that every nonzero element is invertible."""
        q, p = self.q, self.p
        digits = [self._digits(a) for a in range(q)]
        self.add_table = np.zeros((q, q), dtype=np.int32)
        self.mul_table = np.zeros((q, q), dtype=np.int32)
        for a in range(q):
            for b in range(q):
                self.add_table[a, b] = self._from_digits(
                    [(x + y) % p for x, y in zip(digits[a], digits[b])]
                )
                self.mul_table[a, b] = self._poly_mul(a, b)

        self.neg_table = np.zeros(q, dtype=np.int32)
        for a in range(q):
            self.neg_table[a] = int(np.flatnonzero(self.add_table[a] == 0)[0])

        self.inv_table = np.zeros(q, dtype=np.int32)
        for a in range(1, q):
            hits = np.flatnonzero(self.mul_table[a] == 1)
            if len(hits) != 1:
                raise ValueError(
                    f"Element {a} of GF({q}) has no unique inverse; "
                    f"modulus {self.modulus} may not be irreducible"
                )
            self.inv_table[a] = int(hits[0])

        for table in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            table.flags.writeable = False

    # --- Arithmetic ---

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        """Multiplicative inverse. Raises ZeroDivisionError for 0."""
        if a == 0:
            raise ZeroDivisionError(f"Zero has no inverse in GF({self.q})")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def element_label(self, a: int) -> str:
        """Readable form: the residue for prime fields, a polynomial in x otherwise."""
        if self.k == 1:
            return str(a)
        terms = []
        for power, c in reversed(list(enumerate(self._digits(a)))):
            if not c:
                continue
            if power == 0:
                terms.append(str(c))
            else:
                mono = 'x' if power == 1 else f'x^{power}'
                terms.append(mono if c == 1 else f'{c}{mono}')
        return '+'.join(terms) or '0'

    def check_axioms(self) -> bool:
        """Exhaustive field-axiom check (associativity, commutativity, distributivity, identities, inverses)."""
        A, M = self.add_table, self.mul_table
        idx = np.arange(self.q)
        if not (np.array_equal(A, A.T) and np.array_equal(M, M.T)):
            return False
        if not (np.array_equal(A[:, 0], idx) and np.array_equal(M[:, 1], idx)):
            return False
        # (a+b)+c == a+(b+c) for all triples via fancy indexing
        if not np.array_equal(A[A[:, :, None], idx[None, None, :]], A[idx[:, None, None], A[None, :, :]]):
            return False
        if not np.array_equal(M[M[:, :, None], idx[None, None, :]], M[idx[:, None, None], M[None, :, :]]):
            return False
        # a*(b+c) == a*b + a*c
        left = M[idx[:, None, None], A[None, :, :]]
        right = A[M[:, :, None], M[:, None, :]]
        if not np.array_equal(left, right):
            return False
        if not all(M[a, self.inv_table[a]] == 1 for a in range(1, self.q)):
            return False
        return bool(np.all(A[idx, self.neg_table] == 0))

    def __repr__(self) -> str:
        return f"Field(q={self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self) -> int:
        return hash(('Field', self.q))


@lru_cache(maxsize=None)
def field_new(q: int) -> Field:
    """Return GF(q); constructions with the same q share one immutable instance."""
    return Field(q)
