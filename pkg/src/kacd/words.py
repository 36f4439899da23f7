"""Equational theories of extended words in LANG_0, LANG_1 and LANG_α (α ≥ 2).

An extended word is a tuple of letters ``x``, ``!x`` and ``!1``.  Each
``decide_e*`` answers whether two words denote the same language under all
valuations over alphabets of the given size, and every negative answer comes
with a concrete valuation and witness word that are re-checked by evaluation.

* level 0: equal iff same occurrence sets, or both absorbing (contain ``!1``
  or a complementary pair);
* level 1: equal iff every letter occurs equally often;
* level 2: equal iff the words agree outside the ``!1``-delimited segments
  and each segment is either identical or its alternating-run swap.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from . import automata as fa
from .decide import OracleBudget, oracle_refute
from .formats import regex_value
from .semantics import Valuation, membership_dp
from .terms import CO_ONE, CoVar, ExtWord, Var, ext_word_to_term

__all__ = [
    "WordTheoryLevel", "Equal", "NotEqual", "BlockDecomposition", "NotActuallyDistinct",
    "is_absorbing", "decompose_blocks", "swap_segment", "decide_e0", "decide_e1", "decide_e2",
    "decide_word_theory", "refuting_valuation", "word_names",
]


class WordTheoryLevel(enum.IntEnum):
    L0 = 0
    L1 = 1
    L2 = 2


class NotActuallyDistinct(RuntimeError):
    """No refuting valuation exists (or none was found) for words claimed to differ."""


@dataclass(frozen=True)
class Equal:
    justification: str  # SyntacticEqual | OccRule | ParikhRule | SwapRule
    swapped_segments: tuple = ()


@dataclass(frozen=True)
class NotEqual:
    """``witness`` lies in v̂(left) but not in v̂(right)."""

    valuation: Valuation
    witness: tuple
    left: ExtWord
    right: ExtWord
    side: str  # LeftNotInRight when ``left`` is the first word compared
    construction: str

    def verify(self) -> bool:
        # span DP over the witness, a separate path from the constructions below
        w = tuple(self.witness)
        return (membership_dp(w, ext_word_to_term(self.left), self.valuation)
                and not membership_dp(w, ext_word_to_term(self.right), self.valuation))


@dataclass(frozen=True)
class BlockDecomposition:
    prefix: ExtWord
    segments: tuple
    suffix: ExtWord
    notone_count: int

    def reassemble(self) -> ExtWord:
        if self.notone_count == 0:
            return self.prefix
        out = list(self.prefix) + [CO_ONE]
        for seg in self.segments:
            out += list(seg) + [CO_ONE]
        return tuple(out) + tuple(self.suffix)


def word_names(*words: ExtWord) -> tuple:
    return tuple(sorted({a.name for w in words for a in w if isinstance(a, (Var, CoVar))}))


def is_absorbing(w: ExtWord) -> bool:
    letters = set(w)
    return CO_ONE in letters or any(isinstance(a, Var) and CoVar(a.name) in letters for a in letters)


def decompose_blocks(u: ExtWord) -> BlockDecomposition:
    u = tuple(u)
    cuts = [k for k, a in enumerate(u) if a == CO_ONE]
    if not cuts:
        return BlockDecomposition(u, (), (), 0)
    segments = tuple(u[a + 1:b] for a, b in zip(cuts, cuts[1:]))
    return BlockDecomposition(u[:cuts[0]], segments, u[cuts[-1] + 1:], len(cuts))


def _runs(seg: ExtWord) -> list:
    return [(a, len(list(g))) for a, g in itertools.groupby(seg)]


def swap_segment(seg: ExtWord) -> ExtWord | None:
    """``z^c0 !z^d0 … z^c(k-1) !z^d(k-1)`` becomes ``!z^d0 z^c0 …``; None if not of that shape."""
    runs = _runs(seg)
    if len(runs) < 2 or len(runs) % 2:
        return None
    letters = {a for a, _ in runs}
    first = runs[0][0]
    if first == CO_ONE or len(letters) != 2:
        return None
    partner = CoVar(first.name) if isinstance(first, Var) else Var(first.name)
    if letters != {first, partner}:
        return None
    out = []
    for (a, c), (b, d) in zip(runs[0::2], runs[1::2]):
        out += [b] * d + [a] * c
    return tuple(out)


# ---------------------------------------------------------------- deciders

def decide_e0(u: ExtWord, w: ExtWord):
    u, w = tuple(u), tuple(w)
    if u == w:
        return Equal("SyntacticEqual")
    if set(u) == set(w) or (is_absorbing(u) and is_absorbing(w)):
        return Equal("OccRule")
    return refuting_valuation(u, w, WordTheoryLevel.L0)


def decide_e1(u: ExtWord, w: ExtWord):
    u, w = tuple(u), tuple(w)
    if u == w:
        return Equal("SyntacticEqual")
    if Counter(u) == Counter(w):
        return Equal("ParikhRule")
    return refuting_valuation(u, w, WordTheoryLevel.L1)


def _e2_equal(u: ExtWord, w: ExtWord) -> tuple | None:
    """Indices of swapped segments if u and w are equal at level 2, else None."""
    du, dw = decompose_blocks(u), decompose_blocks(w)
    if (du.notone_count != dw.notone_count or du.prefix != dw.prefix
            or du.suffix != dw.suffix):
        return None
    swapped = []
    for k, (a, b) in enumerate(zip(du.segments, dw.segments)):
        if a != b:
            if swap_segment(a) != b:
                return None
            swapped.append(k)
    return tuple(swapped)


def decide_e2(u: ExtWord, w: ExtWord):
    u, w = tuple(u), tuple(w)
    if u == w:
        return Equal("SyntacticEqual")
    swapped = _e2_equal(u, w)
    if swapped is not None:
        return Equal("SwapRule", swapped)
    return refuting_valuation(u, w, WordTheoryLevel.L2)


def decide_word_theory(u: ExtWord, w: ExtWord, level: WordTheoryLevel):
    return (decide_e0, decide_e1, decide_e2)[WordTheoryLevel(level)](u, w)


# -------------------------------------------------------------- refutations

def _result(v: Valuation, witness, left, right, u, construction) -> NotEqual:
    side = "LeftNotInRight" if left is u else "RightNotInLeft"
    return NotEqual(v, tuple(witness), left, right, side, construction)


def _eps_refutation(u: ExtWord, w: ExtWord):
    names = word_names(u, w)

    def eps(word, profile):
        return all(profile[a.name] if isinstance(a, Var) else
                   (not profile[a.name] if isinstance(a, CoVar) else False) for a in word)

    for bits in itertools.product((True, False), repeat=len(names)):
        profile = dict(zip(names, bits))
        eu, ew = eps(u, profile), eps(w, profile)
        if eu != ew:
            v = Valuation.of_words((), {x: [()] if p else [] for x, p in profile.items()})
            left, right = (u, w) if eu else (w, u)
            return _result(v, (), left, right, u, "eps-profile")
    return None


_UNARY = ("a",)


@lru_cache(maxsize=None)
def _at_least(m: int):
    """{a^n | n ≥ m} over the one-letter alphabet, and its JSON record."""
    aut = fa.complement(fa.from_words([("a",) * n for n in range(m)], _UNARY))
    return aut, {"kind": "cowords", "items": ["a" * n for n in range(m)]}


def _unary_refutation(u: ExtWord, w: ExtWord):
    cu, cw = Counter(u), Counter(w)
    names = word_names(u, w)
    plus, plus_src = _at_least(1)
    for x in names:
        for z in (Var(x), CoVar(x)):
            if cu[z] == cw[z]:
                continue
            # the side with fewer z's gets the witness
            left, right = (u, w) if cu[z] < cw[z] else (w, u)
            rest = sum(1 for a in left if (isinstance(a, Var) and a.name != x) or a == CO_ONE)
            m = 1 + rest
            big, big_src = _at_least(m)
            values = {y: plus for y in names}
            sources = {y: plus_src for y in names}
            if isinstance(z, Var):
                values[x], sources[x] = big, big_src
            else:
                values[x] = fa.complement(big)
                sources[x] = {"kind": "words", "items": ["a" * n for n in range(m)]}
            n = m * Counter(left)[z] + rest
            return _result(Valuation(_UNARY, values, sources), ("a",) * n, left, right, u,
                           "unary-min-length")
    if cu[CO_ONE] == cw[CO_ONE]:
        return None
    left, right = (u, w) if cu[CO_ONE] < cw[CO_ONE] else (w, u)
    n = sum(1 for a in left if isinstance(a, Var) or a == CO_ONE)
    v = Valuation(_UNARY, {y: plus for y in names}, {y: plus_src for y in names})
    return _result(v, ("a",) * n, left, right, u, "unary-min-length")


_AB = ("a", "b")


def _flip(a, flipped: frozenset):
    if isinstance(a, Var) and a.name in flipped:
        return CoVar(a.name)
    if isinstance(a, CoVar) and a.name in flipped:
        return Var(a.name)
    return a


def _flip_sets(names: tuple):
    for size in range(len(names) + 1):
        for combo in itertools.combinations(names, size):
            yield frozenset(combo)


def _with_flips(names, base: dict, flipped: frozenset, sources: dict) -> Valuation:
    values = {x: fa.complement(base[x]) if x in flipped else base[x] for x in names}
    return Valuation(_AB, values, {x: s for x, s in sources.items() if x not in flipped})


def _negative_letter_refutation(u, w, flipped: frozenset):
    names = word_names(u, w)
    uf = [_flip(a, flipped) for a in u]
    wf = [_flip(a, flipped) for a in w]
    neg_u = [a for a in uf if not isinstance(a, Var)]
    neg_w = [a for a in wf if not isinstance(a, Var)]
    if len(neg_u) != len(neg_w):
        return None
    diff = next((i for i, (p, q) in enumerate(zip(neg_u, neg_w)) if p != q), None)
    if diff is None:
        return None
    if neg_w[diff] != CO_ONE:
        y, left, right, left_f = neg_w[diff].name, u, w, uf
    else:
        y, left, right, left_f = neg_u[diff].name, w, u, wf
    base = {x: fa.from_words([(), ("a",) if x == y else ("b",)], _AB) for x in names}
    sources = {x: {"kind": "words", "items": ["", "a" if x == y else "b"]} for x in names}
    v = _with_flips(names, base, flipped, sources)
    witness, i = [], 0
    for a in left_f:
        if isinstance(a, Var):
            continue
        witness.append("a" if i == diff or a != CoVar(y) else "b")
        i += 1
    return _result(v, witness, left, right, u, "negative-letter")


def _letter_refutation(u, w):
    """Positive words over at most two variables: one distinct letter per variable."""
    names = word_names(u, w)
    if len(names) > 2 or not all(isinstance(a, Var) for a in u + w):
        return None
    letter = dict(zip(names, _AB))
    values = {x: fa.from_words([(letter[x],)], _AB) for x in names}
    sources = {x: {"kind": "words", "items": [letter[x]]} for x in names}
    return _result(Valuation(_AB, values, sources), [letter[a.name] for a in u], u, w, u,
                   "letter-per-variable")


_EDGE_A = "a + a (a + b)* a"


def _positive_letter_refutation(u, w, flipped: frozenset):
    names = word_names(u, w)
    uf = [_flip(a, flipped) for a in u]
    wf = [_flip(a, flipped) for a in w]
    pu = [k for k, a in enumerate(uf) if isinstance(a, Var)]
    pw = [k for k, a in enumerate(wf) if isinstance(a, Var)]
    if not pu or len(pu) != len(pw):
        return None

    def shape(word, pos):
        yield pos[0] == 0
        yield pos[-1] == len(word) - 1
        for i in range(len(pos) - 1):
            yield pos[i + 1] == pos[i] + 1

    for su, sw in zip(shape(uf, pu), shape(wf, pw)):
        if su != sw:
            left, right, left_f = (u, w, uf) if not su else (w, u, wf)
            break
    else:
        return None
    edge = regex_value(_EDGE_A, _AB)
    base = {x: edge for x in names}
    sources = {x: {"kind": "regex", "expr": _EDGE_A} for x in names}
    v = _with_flips(names, base, flipped, sources)
    witness = ["a" if isinstance(a, Var) else "b" for a in left_f]
    return _result(v, witness, left, right, u, "positive-adjacency")


def _oracle_refutation(u, w):
    budget = OracleBudget(max_alphabet=2, max_value_len=2, max_values_per_var=2)
    tu, tw = ext_word_to_term(u), ext_word_to_term(w)
    for left, right, a, b in ((u, w, tu, tw), (w, u, tw, tu)):
        found = oracle_refute(a, b, budget)
        if found is not None:
            return _result(found[0], found[1], left, right, u, "oracle")
    return None


def refuting_valuation(u: ExtWord, w: ExtWord, level: WordTheoryLevel) -> NotEqual:
    """A verified valuation and witness separating u and w at ``level``.

    Raises NotActuallyDistinct if the words are equal at that level or no
    construction succeeds.
    """
    u, w = tuple(u), tuple(w)
    level = WordTheoryLevel(level)
    if level is WordTheoryLevel.L0:
        candidates = [lambda: _eps_refutation(u, w)]
    elif level is WordTheoryLevel.L1:
        candidates = [lambda: _unary_refutation(u, w)]
    else:
        if _e2_equal(u, w) is not None:
            raise NotActuallyDistinct("the words are equal at level 2")
        flips = list(_flip_sets(word_names(u, w)))
        candidates = [lambda: _unary_refutation(u, w), lambda: _letter_refutation(u, w)]
        candidates += [lambda f=f: _negative_letter_refutation(u, w, f) for f in flips]
        candidates += [lambda f=f: _positive_letter_refutation(u, w, f) for f in flips]
        candidates += [lambda: _oracle_refutation(u, w)]
    for make in candidates:
        found = make()
        if found is not None and found.verify():
            return found
    raise NotActuallyDistinct(f"no refuting valuation found at level {level.name}")
