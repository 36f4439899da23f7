"""Terms separating the equational theories of LANG_n and LANG_(n+1), and the
binary encoding that collapses the hierarchy for complement-free terms."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import automata as fa
from .decide import ORACLE_LETTERS, OracleBudget, oracle_refute
from .semantics import Valuation, evaluate, render_word
from .terms import TOP_FULL, Compl, Star, Term, Var, seq_of, sum_of

__all__ = [
    "separation_terms", "separation_counterexample", "MembershipReport", "check_membership_side",
    "sample_valuation", "binary_encode", "encode_word", "search_separating_pairs",
]


def _default_names(n: int) -> tuple:
    return tuple(f"x{i}" for i in range(n + 1))


def _no_gap(names: Sequence[str]) -> Term:
    """⊤-complement of ``⊤ ((Σ names)*)⁻ ⊤``: words with no factor outside (Σ names)*."""
    inner = Compl(Star(sum_of(Var(x) for x in names)))
    return Compl(seq_of([TOP_FULL, inner, TOP_FULL]))


def separation_terms(n: int, names: Sequence[str] | None = None) -> tuple:
    """(t1, t2): LANG_n satisfies t1 ≤ t2 but LANG_(n+1) does not."""
    if n < 1:
        raise ValueError("n must be at least 1")
    names = tuple(names) if names is not None else _default_names(n)
    if len(names) != n + 1:
        raise ValueError(f"need {n + 1} variable names")
    t1 = _no_gap(names)
    t2 = sum_of(_no_gap(names[:j] + names[j + 1:]) for j in range(n + 1))
    return t1, t2


def separation_counterexample(n: int, names: Sequence[str] | None = None) -> tuple:
    """One fresh letter per variable, and the shortest word in v̂(t1) minus v̂(t2)."""
    t1, t2 = separation_terms(n, names)
    names = tuple(names) if names is not None else _default_names(n)
    letters = ORACLE_LETTERS[:n + 1]
    v = Valuation.of_words(letters, {x: [(a,)] for x, a in zip(names, letters)})
    witness = fa.includes(evaluate(t1, v), evaluate(t2, v))
    if witness is None:
        raise AssertionError("separation valuation failed to refute the inclusion")
    return v, witness


@dataclass
class MembershipReport:
    n: int
    samples: int
    seed: int
    violations: list = field(default_factory=list)  # (valuation, witness)

    @property
    def ok(self) -> bool:
        return not self.violations


def sample_valuation(rng: random.Random, names: Sequence[str], alphabet: Sequence[str],
                     max_words: int = 3, max_len: int = 3, cofinite: float = 0.5) -> Valuation:
    """Each variable gets up to ``max_words`` random words of length ≤ ``max_len``,
    complemented with probability ``cofinite``."""
    alphabet = tuple(alphabet)
    pool = [w for k in range(max_len + 1) for w in itertools.product(alphabet, repeat=k)]
    values, sources = {}, {}
    for x in names:
        items = sorted(set(rng.choice(pool) for _ in range(rng.randint(0, max_words))),
                       key=lambda w: (len(w), w))
        kind = "cowords" if rng.random() < cofinite else "words"
        aut = fa.from_words(items, alphabet)
        values[x] = fa.complement(aut) if kind == "cowords" else aut
        sources[x] = {"kind": kind, "items": [render_word(w, alphabet) for w in items]}
    return Valuation(alphabet, values, sources)


def check_membership_side(n: int, samples: int = 100, seed: int = 0,
                          valuations: Iterable[Valuation] | None = None) -> MembershipReport:
    """Bounded evidence that t1 ≤ t2 holds under valuations over at most n letters."""
    t1, t2 = separation_terms(n)
    names = _default_names(n)
    rng = random.Random(seed)
    if valuations is None:
        valuations = (sample_valuation(rng, names, ORACLE_LETTERS[:rng.randint(0, n)])
                      for _ in range(samples))
    report = MembershipReport(n, 0, seed)
    for v in valuations:
        if len(v.alphabet) > n:
            raise ValueError(f"valuation alphabet larger than {n}")
        report.samples += 1
        w = fa.includes(evaluate(t1, v), evaluate(t2, v))
        if w is not None:
            report.violations.append((v, w))
    return report


def _code(alphabet: Sequence[str]) -> dict:
    return {s: ("a",) + ("b",) * i for i, s in enumerate(alphabet)}


def encode_word(word: Sequence[str], alphabet: Sequence[str]) -> tuple:
    code = _code(alphabet)
    return tuple(c for s in word for c in code[s])


def binary_encode(v: Valuation) -> Valuation:
    """Push every value through the homomorphism sending the i-th letter to a b^i."""
    if not v.alphabet:
        raise ValueError("binary_encode needs a non-empty alphabet")
    code = _code(v.alphabet)
    return Valuation(("a", "b"), {x: fa.image(v.value(x), code, ("a", "b")) for x in v.names})


def search_separating_pairs(pairs: Iterable[tuple], n: int, budget: OracleBudget):
    """Yield (t1, t2, valuation, witness) where no refutation over n letters was found
    but one over n+1 letters was.

    Only a bounded search: a hit is a candidate, not a proof that LANG_n ⊨ t1 ≤ t2.
    """
    low = OracleBudget(n, budget.max_value_len, budget.max_values_per_var, budget.cofinite)
    high = OracleBudget(n + 1, budget.max_value_len, budget.max_values_per_var, budget.cofinite)
    for t1, t2 in pairs:
        if oracle_refute(t1, t2, low) is not None:
            continue
        found = oracle_refute(t1, t2, high)
        if found is not None:
            yield t1, t2, found[0], found[1]
