"""Exhaustive enumeration of small terms and extended words."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .terms import CO_ONE, ONE, ZERO, CoVar, Plus, Seq, Star, Var

__all__ = ["leaves", "terms_of_size", "terms_up_to", "ext_letters", "ext_words_up_to"]


def leaves(names=("x", "y"), constants: bool = True, complements: bool = True) -> tuple:
    out = [Var(x) for x in names]
    if complements:
        out += [CoVar(x) for x in names]
    if constants:
        out += [ONE, ZERO] + ([CO_ONE] if complements else [])
    return tuple(out)


@lru_cache(maxsize=None)
def terms_of_size(size: int, leaf_set: tuple, star: bool = True) -> tuple:
    """All terms with exactly ``size`` AST nodes (a complemented leaf is one node)."""
    if size < 1:
        return ()
    if size == 1:
        return leaf_set
    out = []
    if star:
        out += [Star(t) for t in terms_of_size(size - 1, leaf_set, star)]
    for left_size in range(1, size - 1):
        right_size = size - 1 - left_size
        for a, b in itertools.product(terms_of_size(left_size, leaf_set, star),
                                      terms_of_size(right_size, leaf_set, star)):
            out.append(Plus(a, b))
            out.append(Seq(a, b))
    return tuple(out)


def terms_up_to(max_size: int, names=("x", "y"), star: bool = True) -> list:
    leaf_set = leaves(names)
    return [t for n in range(1, max_size + 1) for t in terms_of_size(n, leaf_set, star)]


def ext_letters(names=("x", "y"), co_one: bool = True) -> tuple:
    out = []
    for x in names:
        out += [Var(x), CoVar(x)]
    return tuple(out) + ((CO_ONE,) if co_one else ())


def ext_words_up_to(max_len: int, letters) -> list:
    return [w for n in range(max_len + 1) for w in itertools.product(letters, repeat=n)]
