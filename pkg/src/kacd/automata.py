"""Finite automata over small explicit alphabets.

Every language value in the package is an :class:`Automaton`.  Automata are
immutable; all operations return new ones.  Words are tuples of symbol
strings.  Inclusion and equivalence checks return the shortest
counterexample, ties broken lexicographically by alphabet order.
"""

from __future__ import annotations

import itertools
import math
import threading
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import ClassVar, Iterable, Iterator, Sequence

__all__ = [
    "Automaton", "AlphabetMismatch", "UnknownSymbol", "Word",
    "empty", "epsilon", "universal", "nonempty", "letter", "from_words",
    "union", "concat", "star", "complement", "intersect", "determinize",
    "minimize", "trim", "membership", "is_empty", "includes", "equivalent",
    "is_finite", "words", "longest_word_length", "restrict", "image",
    "canonical_key", "to_dot", "LanguageTable",
]

Word = tuple  # tuple[str, ...]


class AlphabetMismatch(ValueError):
    pass


class UnknownSymbol(ValueError):
    pass


@dataclass(frozen=True)
class Automaton:
    alphabet: tuple
    states: int
    transitions: frozenset  # of (source, letter index, target)
    initial: frozenset
    accepting: frozenset
    deterministic: bool = False

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet has duplicate symbols")
        k = len(self.alphabet)
        for p, a, q in self.transitions:
            if not (0 <= p < self.states and 0 <= q < self.states and 0 <= a < k):
                raise ValueError(f"transition {(p, a, q)} out of range")
        if any(not 0 <= s < self.states for s in itertools.chain(self.initial, self.accepting)):
            raise ValueError("state out of range")
        if self.deterministic:
            if len(self.initial) != 1 or len(self.transitions) != self.states * k:
                raise ValueError("deterministic automaton must be complete with one initial state")
            if len({(p, a) for p, a, _ in self.transitions}) != self.states * k:
                raise ValueError("deterministic automaton has a missing or doubled transition")

    @cached_property
    def delta(self) -> tuple:
        """``delta[p][a]`` is the tuple of successors of state p on letter a."""
        k = len(self.alphabet)
        rows = [[[] for _ in range(k)] for _ in range(self.states)]
        for p, a, q in sorted(self.transitions):
            rows[p][a].append(q)
        return tuple(tuple(tuple(cell) for cell in row) for row in rows)

    @cached_property
    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.alphabet)}

    def accepts(self, word: Sequence[str]) -> bool:
        return membership(self, word)

    def __repr__(self) -> str:
        return (f"Automaton(alphabet={self.alphabet}, states={self.states}, "
                f"transitions={len(self.transitions)}, det={self.deterministic})")


def _mk(alphabet, states, transitions, initial, accepting, deterministic=False) -> Automaton:
    return Automaton(tuple(alphabet), states, frozenset(transitions), frozenset(initial),
                     frozenset(accepting), deterministic)


def _same_alphabet(a: Automaton, b: Automaton) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"{a.alphabet} vs {b.alphabet}")


# ------------------------------------------------------------ constructors

def empty(alphabet: Sequence[str]) -> Automaton:
    return _mk(alphabet, 0, (), (), ())


def epsilon(alphabet: Sequence[str]) -> Automaton:
    return _mk(alphabet, 1, (), (0,), (0,))


def universal(alphabet: Sequence[str]) -> Automaton:
    return _mk(alphabet, 1, ((0, a, 0) for a in range(len(alphabet))), (0,), (0,))


def nonempty(alphabet: Sequence[str]) -> Automaton:
    k = len(alphabet)
    trans = [(0, a, 1) for a in range(k)] + [(1, a, 1) for a in range(k)]
    return _mk(alphabet, 2, trans, (0,), (1,))


def letter(alphabet: Sequence[str], symbol: str) -> Automaton:
    return from_words([(symbol,)], alphabet)


def from_words(items: Iterable[Sequence[str]], alphabet: Sequence[str]) -> Automaton:
    """Trie automaton for a finite set of words."""
    alphabet = tuple(alphabet)
    idx = {s: i for i, s in enumerate(alphabet)}
    children: list[dict] = [{}]
    accepting = set()
    for w in items:
        node = 0
        for s in w:
            if s not in idx:
                raise UnknownSymbol(f"{s!r} not in alphabet {alphabet}")
            nxt = children[node].get(idx[s])
            if nxt is None:
                nxt = len(children)
                children.append({})
                children[node][idx[s]] = nxt
            node = nxt
        accepting.add(node)
    trans = [(p, a, q) for p, row in enumerate(children) for a, q in row.items()]
    return trim(_mk(alphabet, len(children), trans, (0,), accepting))


# ---------------------------------------------------------------- closure

def union(a: Automaton, b: Automaton) -> Automaton:
    _same_alphabet(a, b)
    n = a.states
    trans = set(a.transitions) | {(p + n, x, q + n) for p, x, q in b.transitions}
    return _mk(a.alphabet, n + b.states, trans, set(a.initial) | {s + n for s in b.initial},
               set(a.accepting) | {s + n for s in b.accepting})


def concat(a: Automaton, b: Automaton) -> Automaton:
    _same_alphabet(a, b)
    n = a.states
    trans = set(a.transitions) | {(p + n, x, q + n) for p, x, q in b.transitions}
    b_init = {s + n for s in b.initial}
    # a final state of a can also take every first step of b
    for p in a.accepting:
        for s in b.initial:
            for x in range(len(a.alphabet)):
                for q in b.delta[s][x]:
                    trans.add((p, x, q + n))
    accepting = {s + n for s in b.accepting}
    if b_init & accepting:
        accepting |= set(a.accepting)
    return trim(_mk(a.alphabet, n + b.states, trans, a.initial, accepting))


def star(a: Automaton) -> Automaton:
    s = a.states  # fresh initial state
    trans = set(a.transitions)
    for q0 in a.initial:
        for x in range(len(a.alphabet)):
            for q in a.delta[q0][x]:
                trans.add((s, x, q))
                for f in a.accepting:
                    trans.add((f, x, q))
    return trim(_mk(a.alphabet, s + 1, trans, (s,), set(a.accepting) | {s}))


def intersect(a: Automaton, b: Automaton) -> Automaton:
    _same_alphabet(a, b)
    k = len(a.alphabet)
    ids: dict = {}
    queue = deque()
    for p in sorted(a.initial):
        for q in sorted(b.initial):
            ids[(p, q)] = len(ids)
            queue.append((p, q))
    trans = []
    while queue:
        p, q = queue.popleft()
        src = ids[(p, q)]
        for x in range(k):
            for p2 in a.delta[p][x]:
                for q2 in b.delta[q][x]:
                    if (p2, q2) not in ids:
                        ids[(p2, q2)] = len(ids)
                        queue.append((p2, q2))
                    trans.append((src, x, ids[(p2, q2)]))
    init = [ids[(p, q)] for p in a.initial for q in b.initial]
    acc = [i for (p, q), i in ids.items() if p in a.accepting and q in b.accepting]
    return trim(_mk(a.alphabet, len(ids), trans, init, acc))


def determinize(a: Automaton) -> Automaton:
    """Complete DFA by subset construction (the empty subset becomes a sink)."""
    if a.deterministic:
        return a
    k = len(a.alphabet)
    start = frozenset(a.initial)
    ids = {start: 0}
    order = [start]
    trans = []
    i = 0
    while i < len(order):
        cur = order[i]
        for x in range(k):
            nxt = frozenset(q for p in cur for q in a.delta[p][x])
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            trans.append((i, x, ids[nxt]))
        i += 1
    acc = [ids[s] for s in order if s & a.accepting]
    return _mk(a.alphabet, len(order), trans, (0,), acc, True)


def minimize(a: Automaton) -> Automaton:
    """Minimal complete DFA, states numbered in breadth-first order from the start."""
    d = determinize(a)
    k = len(d.alphabet)
    delta = [[row[x][0] for x in range(k)] for row in d.delta]
    block = [1 if s in d.accepting else 0 for s in range(d.states)]
    n_blocks = len(set(block))
    while True:
        sigs = {}
        new = []
        for s in range(d.states):
            sig = (block[s],) + tuple(block[delta[s][x]] for x in range(k))
            new.append(sigs.setdefault(sig, len(sigs)))
        block = new
        if len(sigs) == n_blocks:
            break
        n_blocks = len(sigs)
    # renumber canonically
    start = block[0]
    rep = {}
    for s in range(d.states):
        rep.setdefault(block[s], s)
    ids = {start: 0}
    order = [start]
    i = 0
    trans = []
    while i < len(order):
        b = order[i]
        for x in range(k):
            t = block[delta[rep[b]][x]]
            if t not in ids:
                ids[t] = len(order)
                order.append(t)
            trans.append((i, x, ids[t]))
        i += 1
    acc = [ids[b] for b in order if rep[b] in d.accepting]
    return _mk(d.alphabet, len(order), trans, (0,), acc, True)


def complement(a: Automaton) -> Automaton:
    d = determinize(a)
    return _mk(d.alphabet, d.states, d.transitions, d.initial,
               set(range(d.states)) - set(d.accepting), True)


def trim(a: Automaton) -> Automaton:
    """Drop states that are unreachable or cannot reach acceptance."""
    k = len(a.alphabet)
    fwd = set(a.initial)
    stack = list(fwd)
    while stack:
        p = stack.pop()
        for x in range(k):
            for q in a.delta[p][x]:
                if q not in fwd:
                    fwd.add(q)
                    stack.append(q)
    back_edges: dict = {}
    for p, _, q in a.transitions:
        back_edges.setdefault(q, []).append(p)
    bwd = set(a.accepting)
    stack = list(bwd)
    while stack:
        q = stack.pop()
        for p in back_edges.get(q, ()):
            if p not in bwd:
                bwd.add(p)
                stack.append(p)
    keep = sorted(fwd & bwd)
    if len(keep) == a.states and not a.deterministic:
        return a
    ren = {s: i for i, s in enumerate(keep)}
    trans = [(ren[p], x, ren[q]) for p, x, q in a.transitions if p in ren and q in ren]
    return _mk(a.alphabet, len(keep), trans, [ren[s] for s in a.initial if s in ren],
               [ren[s] for s in a.accepting if s in ren])


def restrict(a: Automaton, sub_alphabet: Sequence[str]) -> Automaton:
    """The language intersected with ``sub_alphabet*``, as an automaton over the sub-alphabet."""
    sub = tuple(sub_alphabet)
    missing = [s for s in sub if s not in a.index]
    if missing:
        raise AlphabetMismatch(f"{missing} not in {a.alphabet}")
    new_idx = {a.index[s]: i for i, s in enumerate(sub)}
    trans = [(p, new_idx[x], q) for p, x, q in a.transitions if x in new_idx]
    return trim(_mk(sub, a.states, trans, a.initial, a.accepting))


def image(a: Automaton, mapping: dict, alphabet: Sequence[str]) -> Automaton:
    """Image under the letter-to-word homomorphism ``mapping`` (words must be non-empty)."""
    alphabet = tuple(alphabet)
    idx = {s: i for i, s in enumerate(alphabet)}
    n = a.states
    trans = []
    for p, x, q in sorted(a.transitions):
        target = mapping[a.alphabet[x]]
        if not target:
            raise ValueError("image needs non-empty letter images")
        cur = p
        for s in target[:-1]:
            trans.append((cur, idx[s], n))
            cur = n
            n += 1
        trans.append((cur, idx[target[-1]], q))
    return trim(_mk(alphabet, n, trans, a.initial, a.accepting))


# ---------------------------------------------------------------- queries

def membership(a: Automaton, word: Sequence[str]) -> bool:
    cur = set(a.initial)
    for s in word:
        x = a.index.get(s)
        if x is None:
            raise UnknownSymbol(f"{s!r} not in alphabet {a.alphabet}")
        cur = {q for p in cur for q in a.delta[p][x]}
        if not cur:
            return False
    return bool(cur & a.accepting)


def is_empty(a: Automaton) -> bool:
    return not trim(a).accepting


def _search(a: Automaton, b: Automaton, target) -> Word | None:
    """Shortest-lex word w whose pair of state sets satisfies ``target``."""
    _same_alphabet(a, b)
    k = len(a.alphabet)
    start = (frozenset(a.initial), frozenset(b.initial))
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        sa, sb = node
        if target(bool(sa & a.accepting), bool(sb & b.accepting)):
            out = []
            while parent[node] is not None:
                node, x = parent[node]
                out.append(a.alphabet[x])
            return tuple(reversed(out))
        for x in range(k):
            nxt = (frozenset(q for p in sa for q in a.delta[p][x]),
                   frozenset(q for p in sb for q in b.delta[p][x]))
            if nxt not in parent:
                parent[nxt] = (node, x)
                queue.append(nxt)
    return None


def includes(a: Automaton, b: Automaton) -> Word | None:
    """None if L(a) ⊆ L(b), else the shortest word of L(a) outside L(b)."""
    return _search(a, b, lambda in_a, in_b: in_a and not in_b)


def equivalent(a: Automaton, b: Automaton) -> Word | None:
    """None if the languages agree, else the shortest word in exactly one of them."""
    return _search(a, b, lambda in_a, in_b: in_a != in_b)


def _topological(n: int, succ) -> list:
    indeg = [0] * n
    for p in range(n):
        for q in succ[p]:
            indeg[q] += 1
    queue = deque(p for p in range(n) if indeg[p] == 0)
    order = []
    while queue:
        p = queue.popleft()
        order.append(p)
        for q in succ[p]:
            indeg[q] -= 1
            if indeg[q] == 0:
                queue.append(q)
    return order


def longest_word_length(a: Automaton) -> float:
    """Length of the longest accepted word; ``math.inf`` if infinite, 0 if empty."""
    t = trim(a)
    if not t.accepting:
        return 0
    succ = [set() for _ in range(t.states)]
    for p, _, q in t.transitions:
        succ[p].add(q)
    order = _topological(t.states, succ)
    if len(order) < t.states:
        # every state of a trimmed automaton lies on an accepting path
        return math.inf
    best = [0] * t.states
    for node in reversed(order):
        best[node] = max((1 + best[q] for q in succ[node]), default=0)
    return max(best[s] for s in t.initial)


def is_finite(a: Automaton) -> bool:
    return longest_word_length(a) != math.inf


def words(a: Automaton, max_len: int) -> Iterator[Word]:
    """Accepted words of length ≤ max_len in shortlex order."""
    for n in range(max_len + 1):
        for w in itertools.product(a.alphabet, repeat=n):
            if membership(a, w):
                yield w


def canonical_key(a: Automaton) -> tuple:
    """A key equal for two automata exactly when their languages are equal."""
    m = minimize(a)
    k = len(m.alphabet)
    return (m.alphabet, m.states,
            tuple(m.delta[p][x][0] for p in range(m.states) for x in range(k)),
            tuple(sorted(m.accepting)))


def to_dot(a: Automaton) -> str:
    lines = ["digraph A {", "  rankdir=LR;"]
    for s in range(a.states):
        shape = "doublecircle" if s in a.accepting else "circle"
        lines.append(f"  {s} [shape={shape}];")
    for s in sorted(a.initial):
        lines.append(f"  start{s} [shape=point]; start{s} -> {s};")
    for p, x, q in sorted(a.transitions):
        lines.append(f'  {p} -> {q} [label="{a.alphabet[x]}"];')
    lines.append("}")
    return "\n".join(lines)


# ----------------------------------------------------- interned languages

@dataclass(eq=False)
class LanguageTable:
    """Languages over one alphabet, interned as minimal DFAs with cached operations.

    Each distinct language gets a small integer id.  Operations on ids are
    memoised, which makes evaluating many terms under many valuations cheap
    when the same sub-results recur.
    """

    alphabet: tuple
    _keys: dict = field(default_factory=dict, repr=False)
    _dfas: list = field(default_factory=list, repr=False)
    _union: dict = field(default_factory=dict, repr=False)
    _concat: dict = field(default_factory=dict, repr=False)
    _star: dict = field(default_factory=dict, repr=False)
    _compl: dict = field(default_factory=dict, repr=False)
    _incl: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    _shared: ClassVar[dict] = {}

    @classmethod
    def for_alphabet(cls, alphabet: Sequence[str]) -> "LanguageTable":
        alphabet = tuple(alphabet)
        table = cls._shared.get(alphabet)
        if table is None:
            table = cls._shared[alphabet] = cls(alphabet)
        return table

    def intern(self, a: Automaton) -> int:
        if a.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{a.alphabet} vs {self.alphabet}")
        m = minimize(a)
        k = len(m.alphabet)
        key = (m.states, tuple(m.delta[p][x][0] for p in range(m.states) for x in range(k)),
               tuple(sorted(m.accepting)))
        with self._lock:
            i = self._keys.get(key)
            if i is None:
                i = self._keys[key] = len(self._dfas)
                self._dfas.append(m)
        return i

    def automaton(self, i: int) -> Automaton:
        return self._dfas[i]

    def __len__(self) -> int:
        return len(self._dfas)

    # the algebra used by batched evaluation
    @cached_property
    def zero(self) -> int:
        return self.intern(empty(self.alphabet))

    @cached_property
    def one(self) -> int:
        return self.intern(epsilon(self.alphabet))

    @cached_property
    def co_one(self) -> int:
        return self.intern(nonempty(self.alphabet))

    def union(self, i: int, j: int) -> int:
        key = (i, j) if i <= j else (j, i)
        out = self._union.get(key)
        if out is None:
            out = self._union[key] = self.intern(union(self._dfas[i], self._dfas[j]))
        return out

    def concat(self, i: int, j: int) -> int:
        key = (i, j)
        out = self._concat.get(key)
        if out is None:
            out = self._concat[key] = self.intern(concat(self._dfas[i], self._dfas[j]))
        return out

    def star(self, i: int) -> int:
        out = self._star.get(i)
        if out is None:
            out = self._star[i] = self.intern(star(self._dfas[i]))
        return out

    def complement(self, i: int) -> int:
        out = self._compl.get(i)
        if out is None:
            out = self._compl[i] = self.intern(complement(self._dfas[i]))
        return out

    co = complement

    def includes(self, i: int, j: int) -> Word | None:
        """Shortest word of language i outside language j, or None."""
        if i == j:
            return None
        key = (i, j)
        if key in self._incl:
            return self._incl[key]
        out = self._incl[key] = includes(self._dfas[i], self._dfas[j])
        return out

    def first_non_inclusion(self, left: Sequence[int], right: Sequence[int]):
        """First k with language left[k] not inside right[k], as (k, witness), or None."""
        pairs = set(zip(left, right))
        bad = {p for p in pairs if p[0] != p[1] and self.includes(*p) is not None}
        if not bad:
            return None
        for k, p in enumerate(zip(left, right)):
            if p in bad:
                return k, self._incl[p]
        raise AssertionError("unreachable")
