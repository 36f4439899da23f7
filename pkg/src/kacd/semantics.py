"""Language-model semantics: valuations, evaluation and the standard valuation."""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import automata as fa
from .automata import AlphabetMismatch, Automaton, UnknownSymbol
from .terms import (
    CoOne, Compl, CoVar, ExtWord, FragmentError, One, Plus, Seq, Star, Term, Var, Zero, variables,
)

__all__ = [
    "Valuation", "Holds", "Refuted", "UnsupportedFragment", "Verdict",
    "MissingVariable", "NonEmptyRequired", "NotASubset", "SENTINEL",
    "evaluate", "membership_dp", "eps_membership", "eps_profile",
    "letter_names", "words_to_letters", "restrict_alphabet",
    "standard_valuation", "std_lang_includes", "std_lang_equiv",
    "letter_decomposition", "fresh_name", "render_word", "parse_word",
]

SENTINEL = "⊥"


class MissingVariable(KeyError):
    pass


class NonEmptyRequired(ValueError):
    pass


class NotASubset(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Valuation:
    """An alphabet plus a language for each variable; unlisted variables denote ∅.

    ``sources`` optionally remembers how a value was written down (the JSON
    ``kind``/``items``/``expr`` record) so files round-trip exactly.
    """

    alphabet: tuple
    assignment: Mapping[str, Automaton]
    sources: Mapping[str, dict] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        checked = {}
        for name in sorted(self.assignment):
            aut = self.assignment[name]
            if aut.alphabet != self.alphabet:
                raise AlphabetMismatch(f"value of {name} is over {aut.alphabet}, "
                                       f"valuation is over {self.alphabet}")
            checked[name] = aut
        object.__setattr__(self, "assignment", MappingProxyType(checked))
        object.__setattr__(self, "sources", MappingProxyType(dict(self.sources)))

    @classmethod
    def of_words(cls, alphabet: Sequence[str], values: Mapping[str, Iterable]) -> "Valuation":
        """Finite values; each word is a sequence of symbols (a plain str works for 1-char symbols)."""
        alphabet = tuple(alphabet)
        return cls(alphabet, {x: fa.from_words(ws, alphabet) for x, ws in values.items()})

    def value(self, name: str) -> Automaton:
        aut = self.assignment.get(name)
        return fa.empty(self.alphabet) if aut is None else aut

    @cached_property
    def index_of(self) -> dict:
        return {s: i for i, s in enumerate(self.alphabet)}

    @property
    def names(self) -> tuple:
        return tuple(self.assignment)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Valuation) or self.alphabet != other.alphabet:
            return NotImplemented if not isinstance(other, Valuation) else False
        names = set(self.assignment) | set(other.assignment)
        return all(fa.equivalent(self.value(x), other.value(x)) is None for x in names)

    __hash__ = None


# ------------------------------------------------------------ word text
# Words over one-character alphabets are written as plain strings ("ab");
# otherwise symbols are separated by spaces ("l0 l1").  "" is the empty word.

def render_word(word: Sequence[str], alphabet: Sequence[str]) -> str:
    sep = "" if all(len(s) == 1 for s in alphabet) else " "
    return sep.join(word)


def parse_word(text: str, alphabet: Sequence[str]) -> tuple:
    if any(ch.isspace() for ch in text.strip()) or not all(len(s) == 1 for s in alphabet):
        word = tuple(text.split())
    else:
        word = tuple(text.strip())
    known = set(alphabet)
    for s in word:
        if s not in known:
            raise UnknownSymbol(f"{s!r} not in alphabet {tuple(alphabet)}")
    return word


# ---------------------------------------------------------------- verdicts

@dataclass(frozen=True)
class Holds:
    procedure: str


@dataclass(frozen=True)
class Refuted:
    """``witness`` is in v̂(lhs) but not in v̂(rhs) for ``valuation``."""

    valuation: Valuation
    witness: tuple
    lhs: Term
    rhs: Term
    procedure: str = ""
    side: str = "LeftNotInRight"

    def verify(self) -> bool:
        w = tuple(self.witness)
        return (fa.membership(evaluate(self.lhs, self.valuation), w)
                and not fa.membership(evaluate(self.rhs, self.valuation), w))


@dataclass(frozen=True)
class UnsupportedFragment:
    reason: str


Verdict = Holds | Refuted | UnsupportedFragment


# -------------------------------------------------------------- evaluation

def evaluate(t: Term, v: Valuation) -> Automaton:
    """The language v̂(t) as an automaton over v's alphabet."""
    memo: dict = {}
    X = v.alphabet

    def go(s: Term) -> Automaton:
        hit = memo.get(s)
        if hit is not None:
            return hit
        if isinstance(s, Var):
            out = v.value(s.name)
        elif isinstance(s, CoVar):
            out = fa.complement(v.value(s.name))
        elif isinstance(s, One):
            out = fa.epsilon(X)
        elif isinstance(s, Zero):
            out = fa.empty(X)
        elif isinstance(s, CoOne):
            out = fa.nonempty(X)
        elif isinstance(s, Plus):
            out = fa.union(go(s.left), go(s.right))
        elif isinstance(s, Seq):
            out = fa.concat(go(s.left), go(s.right))
        elif isinstance(s, Star):
            out = fa.star(go(s.body))
        elif isinstance(s, Compl):
            out = fa.complement(go(s.body))
        else:
            raise TypeError(f"not a term: {s!r}")
        memo[s] = out
        return out

    return go(t)


def membership_dp(word: Sequence[str], t: Term, v: Valuation) -> bool:
    """Is ``word`` in v̂(t)?  Computed bottom-up over the spans (i, j) of the word."""
    word = tuple(word)
    for s in word:
        if s not in v.index_of:
            raise UnknownSymbol(f"{s!r} not in alphabet {v.alphabet}")
    n = len(word)
    all_spans = frozenset((i, j) for i in range(n + 1) for j in range(i, n + 1))
    diag = frozenset((i, i) for i in range(n + 1))
    leaf: dict = {}

    def var_spans(name: str) -> frozenset:
        if name not in leaf:
            aut = v.value(name)
            spans = set()
            for i in range(n + 1):
                cur = set(aut.initial)
                for j in range(i, n + 1):
                    if cur & aut.accepting:
                        spans.add((i, j))
                    if j == n or not cur:
                        break
                    x = aut.index[word[j]]
                    cur = {q for p in cur for q in aut.delta[p][x]}
            leaf[name] = frozenset(spans)
        return leaf[name]

    def compose(a: frozenset, b: frozenset) -> frozenset:
        starts: dict = {}
        for i, j in b:
            starts.setdefault(i, []).append(j)
        return frozenset((i, k) for i, j in a for k in starts.get(j, ()))

    memo: dict = {}

    def go(s: Term) -> frozenset:
        if s in memo:
            return memo[s]
        if isinstance(s, Var):
            out = var_spans(s.name)
        elif isinstance(s, CoVar):
            out = all_spans - var_spans(s.name)
        elif isinstance(s, One):
            out = diag
        elif isinstance(s, Zero):
            out = frozenset()
        elif isinstance(s, CoOne):
            out = all_spans - diag
        elif isinstance(s, Plus):
            out = go(s.left) | go(s.right)
        elif isinstance(s, Seq):
            out = compose(go(s.left), go(s.right))
        elif isinstance(s, Star):
            out = diag | go(s.body)
            while True:
                nxt = out | compose(out, out)
                if nxt == out:
                    break
                out = nxt
        elif isinstance(s, Compl):
            raise FragmentError("membership_dp does not handle full complement")
        else:
            raise TypeError(f"not a term: {s!r}")
        memo[s] = out
        return out

    return (0, n) in go(t)


def eps_membership(t: Term, profile: Mapping[str, bool]) -> bool:
    """ε ∈ v̂(t) for any v whose ε-profile is ``profile``."""
    if isinstance(t, Var):
        if t.name not in profile:
            raise MissingVariable(t.name)
        return bool(profile[t.name])
    if isinstance(t, CoVar):
        if t.name not in profile:
            raise MissingVariable(t.name)
        return not profile[t.name]
    if isinstance(t, One):
        return True
    if isinstance(t, (Zero, CoOne)):
        return False
    if isinstance(t, Plus):
        return eps_membership(t.left, profile) or eps_membership(t.right, profile)
    if isinstance(t, Seq):
        return eps_membership(t.left, profile) and eps_membership(t.right, profile)
    if isinstance(t, Star):
        return True
    if isinstance(t, Compl):
        raise FragmentError("eps_membership covers variable and constant complements only")
    raise TypeError(f"not a term: {t!r}")


def eps_profile(v: Valuation, names: Iterable[str]) -> dict:
    return {x: fa.membership(v.value(x), ()) for x in names}


# ------------------------------------------------------- words to letters

def letter_names(m: int) -> tuple:
    return tuple(f"l{i}" for i in range(m))


def words_to_letters(v: Valuation, words: Sequence[Sequence[str]], allow_empty: bool = False) -> Valuation:
    """Replace the factorisation w0…w(m-1) by fresh letters l0…l(m-1).

    Each variable gets the letter blocks l_i…l_(j-1) whose source words
    w_i…w_(j-1) lie in its value.
    """
    words = [tuple(w) for w in words]
    if not allow_empty and any(len(w) == 0 for w in words):
        raise NonEmptyRequired("words_to_letters needs non-empty words")
    for w in words:
        for s in w:
            if s not in v.index_of:
                raise AlphabetMismatch(f"{s!r} not in alphabet {v.alphabet}")
    m = len(words)
    letters = letter_names(m)
    values = {}
    for name, aut in v.assignment.items():
        blocks = []
        for i in range(m + 1):
            for j in range(i, m + 1):
                if i == j and i > 0:
                    continue
                if fa.membership(aut, tuple(itertools.chain.from_iterable(words[i:j]))):
                    blocks.append(letters[i:j])
        values[name] = fa.from_words(blocks, letters)
    return Valuation(letters, values)


def letter_decomposition(word: Sequence[str], u: ExtWord, v: Valuation) -> tuple | None:
    """Split ``word`` into non-empty blocks so that l0…l(m-1) ∈ v̂'(u) for the
    words-to-letters valuation v' of those blocks.  None if word ∉ v̂(u)."""
    word = tuple(word)
    n = len(word)
    langs = []
    for a in u:
        if isinstance(a, Var):
            langs.append(v.value(a.name))
        elif isinstance(a, CoVar):
            langs.append(fa.complement(v.value(a.name)))
        else:
            langs.append(fa.nonempty(v.alphabet))
    # reach[k] maps an end position after k letters of u to its start position
    reach = [{0: None}]
    for aut in langs:
        nxt: dict = {}
        for i in sorted(reach[-1]):
            for j in range(i, n + 1):
                if j not in nxt and fa.membership(aut, word[i:j]):
                    nxt[j] = i
        reach.append(nxt)
    if n not in reach[-1]:
        return None
    cuts = [n]
    for k in range(len(u), 0, -1):
        cuts.append(reach[k][cuts[-1]])
    cuts.reverse()
    return tuple(word[cuts[k]:cuts[k + 1]] for k in range(len(u)) if cuts[k] < cuts[k + 1])


def restrict_alphabet(v: Valuation, sub: Iterable[str]) -> Valuation:
    """v_B(x) = v(x) ∩ B* for every variable."""
    sub = set(sub)
    extra = sub - set(v.alphabet)
    if extra:
        raise NotASubset(f"{sorted(extra)} not in {v.alphabet}")
    B = tuple(s for s in v.alphabet if s in sub)
    return Valuation(B, {x: fa.restrict(a, B) for x, a in v.assignment.items()})


# ---------------------------------------------------- standard valuation

def standard_valuation(names: Iterable[str], with_sentinel: bool = True,
                       sentinel: str = SENTINEL) -> Valuation:
    names = sorted(set(names))
    alphabet = tuple(names) + ((sentinel,) if with_sentinel else ())
    return Valuation(alphabet, {x: fa.from_words([(x,)], alphabet) for x in names})


def fresh_name(taken: Iterable[str], stem: str = "u") -> str:
    taken = set(taken)
    for i in itertools.count():
        name = f"{stem}{i}"
        if name not in taken:
            return name


def std_lang_includes(t1: Term, t2: Term, sentinels: int = 1) -> Holds | Refuted:
    """⟦t1⟧ ⊆ ⟦t2⟧ over the mentioned variables plus fresh sentinel letters."""
    names = sorted(variables(t1) | variables(t2))
    extra = []
    for _ in range(sentinels):
        extra.append(fresh_name(names + extra))
    alphabet = tuple(names) + tuple(extra)
    v = Valuation(alphabet, {x: fa.from_words([(x,)], alphabet) for x in names})
    w = fa.includes(evaluate(t1, v), evaluate(t2, v))
    if w is None:
        return Holds("standard-language")
    return Refuted(v, w, t1, t2, "standard-language")


def std_lang_equiv(t1: Term, t2: Term, sentinels: int = 1) -> Holds | Refuted:
    first = std_lang_includes(t1, t2, sentinels)
    if isinstance(first, Refuted):
        return first
    second = std_lang_includes(t2, t1, sentinels)
    if isinstance(second, Refuted):
        return dataclasses.replace(second, side="RightNotInLeft")
    return second
