"""Evaluate one term under a whole range of valuations at once.

The decision procedures and the brute-force oracle both walk a product
enumeration: every variable ranges over the same finite list of values, and
valuation number k picks digit ``(k // R**(K-1-p)) % R`` for the p-th
variable (first variable most significant).  Evaluating term by term over a
slice of that sequence, with results cached per subterm, is much faster than
evaluating valuation by valuation.

Two value algebras are used:

* :class:`SpanAlgebra` encodes a language over the letters l0…l(m-1) by the
  set of spans (i, j) with l_i…l_(j-1) in the language, packed into an int.
  That is all the words-to-letters procedures need to know.
* :class:`~kacd.automata.LanguageTable` interns real languages as minimal DFAs.
"""

from __future__ import annotations

import operator
import threading
from collections import OrderedDict
from dataclasses import dataclass
from functools import lru_cache

from .terms import CoOne, Compl, CoVar, FragmentError, One, Plus, Seq, Star, Term, Var, Zero

__all__ = ["SpanAlgebra", "Domain", "evaluate_batch", "accepting_bits", "digits", "clear_caches"]


class SpanAlgebra:
    """Span relations over positions 0..m, bit ``i*(m+1)+j`` standing for (i, j)."""

    def __init__(self, m: int):
        self.m = m
        w = self.width = m + 1
        self.row_mask = (1 << w) - 1
        self.diag = sum(1 << (i * w + i) for i in range(w))
        self.upper = sum(1 << (i * w + j) for i in range(w) for j in range(i, w))
        self.full_bit = 1 << m  # the span (0, m)
        self.zero = 0
        self.one = self.diag
        self.co_one = self.upper ^ self.diag
        self._compose: dict = {}
        self._star: dict = {}
        # ε first, then (i, j) with i < j in lexicographic order
        self.blocks = ((0, 0),) + tuple((i, j) for i in range(m) for j in range(i + 1, m + 1))

    @staticmethod
    @lru_cache(maxsize=None)
    def for_m(m: int) -> "SpanAlgebra":
        return SpanAlgebra(m)

    def block_relation(self, subset: int) -> int:
        """The relation of the value made of the blocks selected by the bits of ``subset``."""
        w = self.width
        rel = 0
        for b, (i, j) in enumerate(self.blocks):
            if subset >> b & 1:
                rel |= self.diag if i == j else 1 << (i * w + j)
        return rel

    def block_words(self, subset: int, letters) -> list:
        return [tuple(letters[i:j]) for b, (i, j) in enumerate(self.blocks) if subset >> b & 1]

    union = staticmethod(operator.or_)

    def concat(self, a: int, b: int) -> int:
        key = (a, b)
        out = self._compose.get(key)
        if out is None:
            out = self._compose[key] = self._compose_raw(a, b)
        return out

    def _compose_raw(self, a: int, b: int) -> int:
        w, mask = self.width, self.row_mask
        rows_b = [(b >> (j * w)) & mask for j in range(w)]
        out = 0
        for i in range(w):
            ra = (a >> (i * w)) & mask
            acc = 0
            j = 0
            while ra:
                if ra & 1:
                    acc |= rows_b[j]
                ra >>= 1
                j += 1
            out |= acc << (i * w)
        return out

    def star(self, a: int) -> int:
        out = self._star.get(a)
        if out is None:
            r = self.diag | a
            while True:
                nxt = r | self._compose_raw(r, r)
                if nxt == r:
                    break
                r = nxt
            out = self._star[a] = r
        return out

    def co(self, a: int) -> int:
        return self.upper ^ a

    def complement(self, a: int) -> int:
        raise FragmentError("span relations do not support full complement")


@dataclass(frozen=True, eq=False)
class Domain:
    """A value algebra plus the list of values every variable ranges over.

    Hashed by identity so it can key caches cheaply; build each one once.
    """

    algebra: object
    values: tuple


def digits(index: int, radix: int, width: int) -> tuple:
    out = []
    for _ in range(width):
        index, d = divmod(index, radix)
        out.append(d)
    return tuple(reversed(out))


class _BoundedCache:
    """LRU cache bounded by the total length of the cached lists."""

    def __init__(self, budget: int):
        self.budget = budget
        self.used = 0
        self.data: OrderedDict = OrderedDict()
        self.lock = threading.Lock()

    def get(self, key):
        with self.lock:
            out = self.data.get(key)
            if out is not None:
                self.data.move_to_end(key)
            return out

    def put(self, key, value, size: int) -> None:
        with self.lock:
            if key in self.data:
                return
            self.data[key] = (value, size)
            self.used += size
            while self.used > self.budget and self.data:
                _, (_, s) = self.data.popitem(last=False)
                self.used -= s

    def clear(self) -> None:
        with self.lock:
            self.data.clear()
            self.used = 0


_lists = _BoundedCache(20_000_000)
_bits = _BoundedCache(2_000_000)


def clear_caches() -> None:
    _lists.clear()
    _bits.clear()


def evaluate_batch(t: Term, domain: Domain, names: tuple, start: int, stop: int) -> list:
    """Values of t under valuations ``start..stop-1`` of the product enumeration over ``names``."""
    key = (t, domain, names, start, stop)
    hit = _lists.get(key)
    if hit is not None:
        return hit[0]
    alg = domain.algebra
    n = stop - start
    if isinstance(t, Var) or isinstance(t, CoVar):
        if t.name in names:
            out = _leaf(domain.values, len(names) - 1 - names.index(t.name), start, stop)
        else:
            out = [alg.zero] * n
        if isinstance(t, CoVar):
            out = list(map(alg.co, out))
    elif isinstance(t, One):
        out = [alg.one] * n
    elif isinstance(t, Zero):
        out = [alg.zero] * n
    elif isinstance(t, CoOne):
        out = [alg.co_one] * n
    elif isinstance(t, Plus):
        out = list(map(alg.union, evaluate_batch(t.left, domain, names, start, stop),
                       evaluate_batch(t.right, domain, names, start, stop)))
    elif isinstance(t, Seq):
        out = list(map(alg.concat, evaluate_batch(t.left, domain, names, start, stop),
                       evaluate_batch(t.right, domain, names, start, stop)))
    elif isinstance(t, Star):
        out = list(map(alg.star, evaluate_batch(t.body, domain, names, start, stop)))
    elif isinstance(t, Compl):
        out = list(map(alg.complement, evaluate_batch(t.body, domain, names, start, stop)))
    else:
        raise TypeError(f"not a term: {t!r}")
    _lists.put(key, out, n)
    return out


def _leaf(values: tuple, position_from_right: int, start: int, stop: int) -> list:
    radix = len(values)
    stride = radix ** position_from_right
    return [values[(k // stride) % radix] for k in range(start, stop)]


def accepting_bits(t: Term, domain: Domain, names: tuple, start: int, stop: int) -> int:
    """Bit k-start is set when valuation k puts the full word l0…l(m-1) into v̂(t).

    Only meaningful for span domains.
    """
    key = (t, domain, names, start, stop)
    hit = _bits.get(key)
    if hit is not None:
        return hit[0]
    full = domain.algebra.full_bit
    rels = evaluate_batch(t, domain, names, start, stop)
    text = "".join("1" if r & full else "0" for r in reversed(rels))
    out = int(text, 2) if text else 0
    _bits.put(key, out, 1)
    return out
