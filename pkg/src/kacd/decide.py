"""Decision procedures for the fragments with finite-search characterisations.

Every procedure enumerates a finite, canonical family of valuations that is
known to contain a counterexample whenever the inclusion fails in all
language models:

* ``1 ≤ t``: the 2^k ε-profiles (valuations over the empty alphabet);
* ``x ≤ t``: valuations over one letter l with every value ⊆ {ε, l};
* ``u ≤ t`` for an extended word u, or a star-free left side: for each
  m up to the length bound, valuations over l0…l(m-1) whose values are sets
  of blocks l_i…l_(j-1) (plus ε); the counterexample word is l0…l(m-1);
* ``⊤ ≤ t``: ε-profiles, then one-letter valuations.

The order is m ascending, then valuations in product order over the
variables sorted by name (first one most significant), each variable's
block subset counted in binary with bit b for the b-th block, ε first and
then (i, j) lexicographically.
"""

from __future__ import annotations

import dataclasses
import enum
import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from . import automata as fa
from .automata import LanguageTable
from .batch import Domain, SpanAlgebra, accepting_bits, digits, evaluate_batch
from .semantics import (
    Holds, Refuted, UnsupportedFragment, Valuation, eps_membership, letter_names,
    membership_dp, render_word,
)
from .terms import (
    CO_ONE, ONE, TOP, TOP_FULL, FragmentClass, FragmentError, NotStarFree, Plus, Term, Var,
    as_ext_word, classify_fragment, ext_word_to_term, is_star_free, render_term, sup_length,
    variables,
)

__all__ = [
    "EnumerationMode", "Relation", "DecideConfig", "BudgetExceeded", "OracleBudget",
    "decide_identity_inclusion", "decide_variable_inclusion", "decide_word_inclusion",
    "decide_starfree_inclusion", "decide_universality", "decide_auto", "oracle_refute",
]


class EnumerationMode(enum.Enum):
    FULL_WORD = "fullword"
    FULL_INCLUSION = "inclusion"


class Relation(enum.Enum):
    LE = "le"
    EQ = "eq"


class BudgetExceeded(RuntimeError):
    """The required search is larger than the configured caps allow."""


@dataclass(frozen=True)
class DecideConfig:
    max_block_count: int = 8
    enumeration_mode: EnumerationMode = EnumerationMode.FULL_WORD
    parallel: bool = False
    # cap on valuations enumerated for one value of m
    max_valuations: int = 1 << 22
    chunk_size: int = 1 << 12
    workers: int = 4


DEFAULT = DecideConfig()


def _check_rhs(t: Term) -> None:
    if classify_fragment(t) > FragmentClass.KA_CX_C1:
        raise FragmentError(f"right side {render_term(t)!r} uses full complement")


def _names(*terms: Term) -> tuple:
    out = frozenset()
    for t in terms:
        out |= variables(t)
    return tuple(sorted(out))


# ------------------------------------------------------- identity, variable

def decide_identity_inclusion(t: Term) -> Holds | Refuted:
    """1 ≤ t holds in every language model iff it holds for all ε-profiles."""
    _check_rhs(t)
    names = _names(t)
    for bits in itertools.product((False, True), repeat=len(names)):
        profile = dict(zip(names, bits))
        if not eps_membership(t, profile):
            v = Valuation.of_words((), {x: [()] if p else [] for x, p in profile.items()})
            return Refuted(v, (), ONE, t, "identity")
    return Holds("identity")


_ONE_LETTER = ("l0",)
# value k of a variable is the block subset with bit 0 = ε, bit 1 = l0
_SMALL_VALUES = ((), ((),), (("l0",),), ((), ("l0",)))


def decide_variable_inclusion(x: str, t: Term) -> Holds | Refuted:
    """x ≤ t holds iff it holds for all valuations over one letter with values ⊆ {ε, l0}."""
    _check_rhs(t)
    names = tuple(sorted(variables(t) | {x}))
    for choice in itertools.product(range(4), repeat=len(names)):
        v = Valuation.of_words(_ONE_LETTER, {y: _SMALL_VALUES[c] for y, c in zip(names, choice)})
        cx = choice[names.index(x)]
        if cx & 1 and not membership_dp((), t, v):
            return Refuted(v, (), Var(x), t, "variable")
        if cx & 2 and not membership_dp(_ONE_LETTER, t, v):
            return Refuted(v, _ONE_LETTER, Var(x), t, "variable")
    return Holds("variable")


def decide_universality(t: Term) -> Holds | Refuted:
    """⊤ ≤ t: checked on ε-profiles and on single-letter words (the sup-length of ⊤ is 1)."""
    _check_rhs(t)
    names = _names(t)
    for bits in itertools.product((False, True), repeat=len(names)):
        profile = dict(zip(names, bits))
        if not eps_membership(t, profile):
            v = Valuation.of_words((), {x: [()] if p else [] for x, p in profile.items()})
            return Refuted(v, (), TOP, t, "universality")
    for choice in itertools.product(range(4), repeat=len(names)):
        v = Valuation.of_words(_ONE_LETTER, {y: _SMALL_VALUES[c] for y, c in zip(names, choice)})
        if not membership_dp(_ONE_LETTER, t, v):
            return Refuted(v, _ONE_LETTER, TOP, t, "universality")
    return Holds("universality")


# ------------------------------------------------------ words-to-letters search

@lru_cache(maxsize=None)
def _span_domain(m: int) -> Domain:
    alg = SpanAlgebra.for_m(m)
    return Domain(alg, tuple(alg.block_relation(s) for s in range(1 << len(alg.blocks))))


@lru_cache(maxsize=None)
def _language_domain(m: int) -> Domain:
    alg = SpanAlgebra.for_m(m)
    letters = letter_names(m)
    table = LanguageTable.for_alphabet(letters)
    values = tuple(table.intern(fa.from_words(alg.block_words(s, letters), letters))
                   for s in range(1 << len(alg.blocks)))
    return Domain(table, values)


@lru_cache(maxsize=4096)
def _block_valuation(m: int, names: tuple, index: int) -> Valuation:
    alg = SpanAlgebra.for_m(m)
    letters = letter_names(m)
    subsets = digits(index, 1 << len(alg.blocks), len(names))
    return Valuation.of_words(letters, {x: alg.block_words(s, letters) for x, s in zip(names, subsets)})


def _scan_chunk(lhs: Term, rhs: Term, m: int, names: tuple, mode: EnumerationMode,
                start: int, stop: int):
    """First (index, witness) in [start, stop) refuting lhs ≤ rhs, or None."""
    if mode is EnumerationMode.FULL_WORD:
        dom = _span_domain(m)
        hit = accepting_bits(lhs, dom, names, start, stop) & ~accepting_bits(rhs, dom, names, start, stop)
        if hit:
            return start + (hit & -hit).bit_length() - 1, letter_names(m)
        return None
    dom = _language_domain(m)
    table = dom.algebra
    found = table.first_non_inclusion(evaluate_batch(lhs, dom, names, start, stop),
                                      evaluate_batch(rhs, dom, names, start, stop))
    return None if found is None else (start + found[0], found[1])


def _block_search(lhs: Term, rhs: Term, bound: int, config: DecideConfig, procedure: str):
    if bound > config.max_block_count:
        raise BudgetExceeded(f"{procedure} inclusion needs {bound} blocks, "
                             f"max_block_count is {config.max_block_count}")
    names = _names(lhs, rhs)
    for m in range(bound + 1):
        n_blocks = len(SpanAlgebra.for_m(m).blocks)
        total = 1 << (n_blocks * len(names))
        if total > config.max_valuations:
            raise BudgetExceeded(f"{total} valuations at m={m} exceed max_valuations")
        chunks = [(s, min(s + config.chunk_size, total)) for s in range(0, total, config.chunk_size)]
        found = None
        if config.parallel and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                results = pool.map(lambda c: _scan_chunk(lhs, rhs, m, names, config.enumeration_mode,
                                                         *c), chunks)
                found = next((r for r in results if r is not None), None)
        else:
            for s, e in chunks:
                found = _scan_chunk(lhs, rhs, m, names, config.enumeration_mode, s, e)
                if found is not None:
                    break
        if found is not None:
            index, witness = found
            return Refuted(_block_valuation(m, names, index), tuple(witness), lhs, rhs, procedure)
    return Holds(procedure)


def decide_word_inclusion(u: tuple, t: Term, config: DecideConfig = DEFAULT) -> Holds | Refuted:
    """u ≤ t for an extended word u; the search needs at most len(u) blocks."""
    _check_rhs(t)
    return _block_search(ext_word_to_term(u), t, len(u), config, "word")


def decide_starfree_inclusion(t1: Term, t2: Term, config: DecideConfig = DEFAULT) -> Holds | Refuted:
    """t1 ≤ t2 for star-free t1; the search needs at most sup_length(t1) blocks."""
    if not is_star_free(t1):
        raise NotStarFree(f"{render_term(t1)!r} contains a star")
    if classify_fragment(t1) > FragmentClass.KA_CX_C1:
        raise FragmentError(f"left side {render_term(t1)!r} uses full complement")
    _check_rhs(t2)
    return _block_search(t1, t2, int(sup_length(t1)), config, "starfree")


# ---------------------------------------------------------------- routing

_TOP_SHAPES = (TOP, Plus(CO_ONE, ONE), TOP_FULL)


def _route(lhs: Term, rhs: Term, config: DecideConfig):
    if classify_fragment(rhs) > FragmentClass.KA_CX_C1:
        return UnsupportedFragment("right side uses full complement")
    if lhs == ONE:
        return decide_identity_inclusion(rhs)
    if isinstance(lhs, Var):
        return decide_variable_inclusion(lhs.name, rhs)
    if lhs in _TOP_SHAPES:
        return decide_universality(rhs)
    word = as_ext_word(lhs)
    if word is not None:
        return decide_word_inclusion(word, rhs, config)
    if classify_fragment(lhs) > FragmentClass.KA_CX_C1:
        return UnsupportedFragment("left side uses full complement")
    if is_star_free(lhs):
        return decide_starfree_inclusion(lhs, rhs, config)
    return UnsupportedFragment("left side has star, not a word")


def decide_auto(lhs: Term, rel: Relation, rhs: Term, config: DecideConfig = DEFAULT):
    """Pick the most specific procedure; an equation is checked as two inclusions.

    For an equation, a refutation of either direction is returned even if
    the other direction is unsupported.
    """
    rel = Relation(rel)
    first = _route(lhs, rhs, config)
    if rel is Relation.LE or isinstance(first, Refuted):
        return first
    second = _route(rhs, lhs, config)
    if isinstance(second, Refuted):
        return dataclasses.replace(second, side="RightNotInLeft")
    if isinstance(first, UnsupportedFragment):
        return UnsupportedFragment(f"left-to-right inclusion: {first.reason}")
    if isinstance(second, UnsupportedFragment):
        return UnsupportedFragment(f"right-to-left inclusion: {second.reason}")
    return Holds(f"{first.procedure}+{second.procedure}")


# ------------------------------------------------------------------ oracle

ORACLE_LETTERS = tuple("abcdefghijk")


@dataclass(frozen=True)
class OracleBudget:
    """Search space of :func:`oracle_refute`.

    Alphabets a, ab, abc… up to ``max_alphabet`` letters; each variable takes
    every set of at most ``max_values_per_var`` words of length at most
    ``max_value_len``, then (if ``cofinite``) the complements of those sets.
    ``time_ms`` stops the search early; the result is then not reproducible.
    """

    max_alphabet: int = 2
    max_value_len: int = 2
    max_values_per_var: int = 2
    cofinite: bool = True
    time_ms: int | None = None
    chunk_size: int = 1 << 12


@lru_cache(maxsize=64)
def _oracle_domain(k: int, max_len: int, max_items: int, cofinite: bool):
    letters = ORACLE_LETTERS[:k]
    table = LanguageTable.for_alphabet(letters)
    pool = [w for n in range(max_len + 1) for w in itertools.product(letters, repeat=n)]
    sets = [c for size in range(max_items + 1) for c in itertools.combinations(pool, size)]
    seen: dict = {}
    labels = []
    for kind in ("words", "cowords") if cofinite else ("words",):
        for items in sets:
            aut = fa.from_words(items, letters)
            if kind == "cowords":
                aut = fa.complement(aut)
            i = table.intern(aut)
            if i not in seen:
                seen[i] = len(labels)
                labels.append((kind, items))
    ids = tuple(seen)
    return Domain(table, ids), tuple(labels)


def _oracle_valuation(k: int, labels: tuple, names: tuple, index: int) -> Valuation:
    letters = ORACLE_LETTERS[:k]
    values, sources = {}, {}
    for x, d in zip(names, digits(index, len(labels), len(names))):
        kind, items = labels[d]
        aut = fa.from_words(items, letters)
        values[x] = fa.complement(aut) if kind == "cowords" else aut
        sources[x] = {"kind": kind, "items": [render_word(w, letters) for w in items]}
    return Valuation(letters, values, sources)


def oracle_refute(t1: Term, t2: Term, budget: OracleBudget = OracleBudget()):
    """Brute-force search for (valuation, witness) with witness ∈ v̂(t1) minus v̂(t2).

    Returns None when the budgeted search space has no counterexample.
    """
    deadline = None if budget.time_ms is None else time.monotonic() + budget.time_ms / 1000
    names = _names(t1, t2)
    for k in range(budget.max_alphabet + 1):
        dom, labels = _oracle_domain(k, budget.max_value_len, budget.max_values_per_var,
                                     budget.cofinite)
        table = dom.algebra
        total = len(labels) ** len(names)
        for s in range(0, total, budget.chunk_size):
            e = min(s + budget.chunk_size, total)
            found = table.first_non_inclusion(evaluate_batch(t1, dom, names, s, e),
                                              evaluate_batch(t2, dom, names, s, e))
            if found is not None:
                return _oracle_valuation(k, labels, names, s + found[0]), found[1]
            if deadline is not None and time.monotonic() > deadline:
                return None
    return None
