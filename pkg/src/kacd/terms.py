"""Terms of Kleene algebra with variable and constant complements.

Terms are immutable trees.  ``!x`` and ``!1`` are leaves of their own
(:class:`CoVar`, :class:`CoOne`); the general complement :class:`Compl` only
exists in the full fragment.  The same three leaf classes double as the
letters of the extended alphabet used by the word-level procedures.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

__all__ = [
    "FragmentClass", "ParseError", "FragmentError", "NotStarFree",
    "Var", "CoVar", "One", "Zero", "CoOne", "Plus", "Seq", "Star", "Compl",
    "Term", "ExtLetter", "ExtWord", "ONE", "ZERO", "CO_ONE", "TOP", "TOP_FULL",
    "complement", "sum_of", "seq_of", "parse_term", "render_term",
    "classify_fragment", "is_star_free", "variables", "term_size",
    "ext_language", "sup_length", "letter_text", "parse_letter",
    "parse_ext_word", "render_ext_word", "ext_word_to_term", "as_ext_word",
    "occ", "count", "is_ext_letter", "OMEGA",
]

IDENT = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")
OMEGA = math.inf  # sup_length of a term whose extended language is infinite


class FragmentClass(enum.IntEnum):
    KA = 0
    KA_CX = 1
    KA_CX_C1 = 2
    KA_FULL = 3


class ParseError(ValueError):
    """Malformed term or word text."""

    def __init__(self, message: str, position: int, expected: Iterable[str] = ()):
        self.position = position
        self.expected = tuple(expected)
        detail = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")


class FragmentError(ValueError):
    """A term uses an operator outside the fragment that was asked for."""


class NotStarFree(ValueError):
    pass


def _check_ident(name: str) -> None:
    if not isinstance(name, str) or not IDENT.fullmatch(name):
        raise ValueError(f"invalid identifier {name!r}")


def _cached_hash(self) -> int:
    # terms key many caches; hashing a deep tree on every lookup is the bottleneck
    h = self.__dict__.get("_hash")
    if h is None:
        h = hash((type(self).__name__,) + tuple(self.__dict__[f] for f in self.__dataclass_fields__))
        object.__setattr__(self, "_hash", h)
    return h


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        _check_ident(self.name)


@dataclass(frozen=True)
class CoVar:
    name: str

    def __post_init__(self):
        _check_ident(self.name)


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class CoOne:
    pass


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"

    __hash__ = _cached_hash


@dataclass(frozen=True)
class Seq:
    left: "Term"
    right: "Term"

    __hash__ = _cached_hash


@dataclass(frozen=True)
class Star:
    body: "Term"

    __hash__ = _cached_hash


@dataclass(frozen=True)
class Compl:
    body: "Term"

    __hash__ = _cached_hash


Term = Union[Var, CoVar, One, Zero, CoOne, Plus, Seq, Star, Compl]
ExtLetter = Union[Var, CoVar, CoOne]
ExtWord = tuple  # tuple[ExtLetter, ...]

ONE = One()
ZERO = Zero()
CO_ONE = CoOne()
# top inside the variable/constant-complement fragment, and as 0⁻ in the full one
TOP = Plus(ONE, CO_ONE)
TOP_FULL = Compl(ZERO)


def complement(t: Term) -> Term:
    """Complement with the leaf normalisation ``!x -> CoVar``, ``!1 -> CoOne``, ``!!x -> x``."""
    if isinstance(t, Var):
        return CoVar(t.name)
    if isinstance(t, CoVar):
        return Var(t.name)
    if isinstance(t, One):
        return CO_ONE
    if isinstance(t, CoOne):
        return ONE
    return Compl(t)


def sum_of(terms: Iterable[Term]) -> Term:
    """Left-associated ``0 + t1 + ... + tn``; the leading 0 is always present."""
    out: Term = ZERO
    for t in terms:
        out = Plus(out, t)
    return out


def seq_of(terms: Iterable[Term]) -> Term:
    """Left-associated composition, ``1`` when empty."""
    out: Term | None = None
    for t in terms:
        out = t if out is None else Seq(out, t)
    return ONE if out is None else out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"([a-zA-Z][a-zA-Z0-9_]*)|([01])|(.)", re.S)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            toks.append(("ident", m.group(1), start))
        elif m.group(2):
            toks.append((m.group(2), m.group(2), start))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "!+;*()":
                raise ParseError(f"unexpected character {ch!r}", start)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


_ATOM_START = ("ident", "0", "1", "!", "(")


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        if tok[0] != kind:
            raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2], [kind])
        self.i += 1
        return tok

    def term(self) -> Term:
        left = self.cat()
        while self.peek() == "+":
            self.i += 1
            left = Plus(left, self.cat())
        return left

    def cat(self) -> Term:
        left = self.unary()
        while True:
            if self.peek() == ";":
                self.i += 1
            elif self.peek() not in _ATOM_START:
                return left
            left = Seq(left, self.unary())

    def unary(self) -> Term:
        t = self.atom()
        while self.peek() == "*":
            self.i += 1
            t = Star(t)
        return t

    def atom(self) -> Term:
        kind, value, pos = self.toks[self.i]
        if kind == "0":
            self.i += 1
            return ZERO
        if kind == "1":
            self.i += 1
            return ONE
        if kind == "ident":
            self.i += 1
            return Var(value)
        if kind == "!":
            self.i += 1
            return complement(self.atom())
        if kind == "(":
            self.i += 1
            t = self.term()
            self.take(")")
            return t
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos,
                         ["identifier", "0", "1", "!", "("])


def parse_term(text: str, allowed: FragmentClass = FragmentClass.KA_FULL) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek() != "eof":
        _, value, pos = p.toks[p.i]
        raise ParseError(f"unexpected {value!r}", pos, ["+", ";", "*", "end of input"])
    cls = classify_fragment(t)
    if cls > allowed:
        raise FragmentError(f"term {render_term(t)!r} is in {cls.name}, above {allowed.name}")
    return t


# -------------------------------------------------------------- rendering

_SUM, _CAT, _UNARY, _ATOM = range(4)


def render_term(t: Term) -> str:
    return _render(t, _SUM)


def _render(t: Term, level: int) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, CoVar):
        return "!" + t.name
    if isinstance(t, One):
        return "1"
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, CoOne):
        return "!1"
    if isinstance(t, Plus):
        s, own = f"{_render(t.left, _SUM)} + {_render(t.right, _CAT)}", _SUM
    elif isinstance(t, Seq):
        s, own = f"{_render(t.left, _CAT)} ; {_render(t.right, _UNARY)}", _CAT
    elif isinstance(t, Star):
        s, own = _render(t.body, _UNARY) + "*", _UNARY
    elif isinstance(t, Compl):
        s, own = "!" + _render(t.body, _ATOM), _UNARY
    else:
        raise TypeError(f"not a term: {t!r}")
    return f"({s})" if own < level else s


# --------------------------------------------------------------- measures

@lru_cache(maxsize=None)
def classify_fragment(t: Term) -> FragmentClass:
    if isinstance(t, (Var, One, Zero)):
        return FragmentClass.KA
    if isinstance(t, CoVar):
        return FragmentClass.KA_CX
    if isinstance(t, CoOne):
        return FragmentClass.KA_CX_C1
    if isinstance(t, (Plus, Seq)):
        return max(classify_fragment(t.left), classify_fragment(t.right))
    if isinstance(t, Star):
        return classify_fragment(t.body)
    if isinstance(t, Compl):
        return FragmentClass.KA_FULL
    raise TypeError(f"not a term: {t!r}")


@lru_cache(maxsize=None)
def is_star_free(t: Term) -> bool:
    if isinstance(t, (Plus, Seq)):
        return is_star_free(t.left) and is_star_free(t.right)
    if isinstance(t, Star):
        return False
    if isinstance(t, Compl):
        return is_star_free(t.body)
    return True


@lru_cache(maxsize=None)
def variables(t: Term) -> frozenset:
    if isinstance(t, (Var, CoVar)):
        return frozenset([t.name])
    if isinstance(t, (Plus, Seq)):
        return variables(t.left) | variables(t.right)
    if isinstance(t, (Star, Compl)):
        return variables(t.body)
    return frozenset()


def term_size(t: Term) -> int:
    """Number of AST nodes; ``!x`` and ``!1`` count as one leaf."""
    if isinstance(t, (Plus, Seq)):
        return 1 + term_size(t.left) + term_size(t.right)
    if isinstance(t, (Star, Compl)):
        return 1 + term_size(t.body)
    return 1


def is_ext_letter(t: object) -> bool:
    return isinstance(t, (Var, CoVar, CoOne))


def letter_text(letter: ExtLetter) -> str:
    return render_term(letter)


def parse_letter(text: str) -> ExtLetter:
    if text == "!1":
        return CO_ONE
    if text.startswith("!") and IDENT.fullmatch(text[1:]):
        return CoVar(text[1:])
    if IDENT.fullmatch(text):
        return Var(text)
    raise ParseError(f"bad extended letter {text!r}", 0, ["x", "!x", "!1"])


def parse_ext_word(text: str) -> ExtWord:
    return tuple(parse_letter(tok) for tok in text.split())


def render_ext_word(w: ExtWord) -> str:
    return " ".join(letter_text(a) for a in w)


def ext_word_to_term(w: ExtWord) -> Term:
    return seq_of(w)


@lru_cache(maxsize=None)
def as_ext_word(t: Term) -> ExtWord | None:
    """The extended word a Seq chain of letters (and 1s) spells, or None."""
    if is_ext_letter(t):
        return (t,)
    if isinstance(t, One):
        return ()
    if isinstance(t, Seq):
        a, b = as_ext_word(t.left), as_ext_word(t.right)
        if a is not None and b is not None:
            return a + b
    return None


def occ(w: ExtWord) -> frozenset:
    return frozenset(w)


def count(w: ExtWord, letters) -> int:
    letters = set(letters)
    return sum(1 for a in w if a in letters)


# ---------------------------------------------- extended-alphabet language

def _letter_order(a: ExtLetter) -> tuple:
    if isinstance(a, CoOne):
        return (1, "", 0)
    return (0, a.name, isinstance(a, CoVar))


def ext_language(t: Term):
    """Glushkov automaton for the language of t over its extended letters."""
    from .automata import Automaton

    positions: list[ExtLetter] = []
    follow: dict[int, set[int]] = {}

    def walk(s: Term):
        # returns (nullable, first, last)
        if is_ext_letter(s):
            p = len(positions) + 1
            positions.append(s)
            follow[p] = set()
            return False, {p}, {p}
        if isinstance(s, One):
            return True, set(), set()
        if isinstance(s, Zero):
            return False, set(), set()
        if isinstance(s, Plus):
            n1, f1, l1 = walk(s.left)
            n2, f2, l2 = walk(s.right)
            return n1 or n2, f1 | f2, l1 | l2
        if isinstance(s, Seq):
            n1, f1, l1 = walk(s.left)
            n2, f2, l2 = walk(s.right)
            for p in l1:
                follow[p] |= f2
            return n1 and n2, f1 | f2 if n1 else f1, l1 | l2 if n2 else l2
        if isinstance(s, Star):
            n, f, last = walk(s.body)
            for p in last:
                follow[p] |= f
            return True, f, last
        raise FragmentError("the extended-alphabet language is undefined under full complement")

    nullable, first, last = walk(t)
    letters = sorted(set(positions), key=_letter_order)
    alphabet = tuple(letter_text(a) for a in letters)
    index = {a: i for i, a in enumerate(letters)}
    trans = set()
    for q in first:
        trans.add((0, index[positions[q - 1]], q))
    for p, nxt in follow.items():
        for q in nxt:
            trans.add((p, index[positions[q - 1]], q))
    accepting = set(last) | ({0} if nullable else set())
    return Automaton(alphabet, len(positions) + 1, frozenset(trans), frozenset([0]),
                     frozenset(accepting))


@lru_cache(maxsize=None)
def sup_length(t: Term) -> float:
    """Longest word length in the extended-alphabet language; ``math.inf`` if unbounded."""
    from .automata import longest_word_length

    return longest_word_length(ext_language(t))

