"""Hypothesis strategies for terms, words and valuations."""

from __future__ import annotations

from hypothesis import strategies as st

from kacd import automata as fa
from kacd.semantics import Valuation
from kacd.terms import CO_ONE, ONE, ZERO, CoVar, Plus, Seq, Star, Var, complement

NAMES = ("x", "y")


def terms(names=NAMES, complements: bool = True, constant_complement: bool = True,
          full: bool = False, star: bool = True, max_leaves: int = 8):
    leaves = [st.sampled_from([Var(x) for x in names]), st.sampled_from([ONE, ZERO])]
    if complements:
        leaves.append(st.sampled_from([CoVar(x) for x in names]))
    if constant_complement:
        leaves.append(st.just(CO_ONE))

    def extend(children):
        options = [st.builds(Plus, children, children), st.builds(Seq, children, children)]
        if star:
            options.append(st.builds(Star, children))
        if full:
            options.append(st.builds(complement, children))
        return st.one_of(options)

    return st.recursive(st.one_of(leaves), extend, max_leaves=max_leaves)


def ext_words(names=NAMES, co_one: bool = True, max_size: int = 4):
    letters = [Var(x) for x in names] + [CoVar(x) for x in names] + ([CO_ONE] if co_one else [])
    return st.lists(st.sampled_from(letters), max_size=max_size).map(tuple)


def words(alphabet, max_size: int = 3):
    if not alphabet:
        return st.just(())
    return st.lists(st.sampled_from(list(alphabet)), max_size=max_size).map(tuple)


@st.composite
def valuations(draw, names=NAMES, alphabet=("a", "b"), max_words: int = 3, max_len: int = 2,
               cofinite: bool = True):
    """Finite or co-finite values; returns (Valuation, raw word sets, complemented flags)."""
    values, raw, flags = {}, {}, {}
    for x in names:
        items = draw(st.lists(words(alphabet, max_len), max_size=max_words, unique=True))
        co = cofinite and draw(st.booleans())
        aut = fa.from_words(items, alphabet)
        values[x] = fa.complement(aut) if co else aut
        raw[x], flags[x] = frozenset(items), co
    return Valuation(alphabet, values), raw, flags


def truncated_values(raw: dict, flags: dict, alphabet, n: int) -> dict:
    from reference import all_words
    universe = all_words(alphabet, n)
    return {x: (universe - raw[x]) if flags[x] else (raw[x] & universe) for x in raw}
