"""JSON forms of valuations and verdicts.

A valuation file looks like::

    {"alphabet": ["a", "b"],
     "vars": {"x": {"kind": "words", "items": ["a", "ab"]},
              "y": {"kind": "cowords", "items": [""]},
              "z": {"kind": "regex", "expr": "a (a + b)* a"}}}

``cowords`` is the complement of the listed finite set; ``regex`` uses the
term grammar without complements, alphabet symbols standing for letters.
Values loaded from a file keep their original record, so dumping a loaded
valuation reproduces the file.
"""

from __future__ import annotations

import json
from typing import Sequence

from . import automata as fa
from .automata import Automaton
from .semantics import Holds, Refuted, UnsupportedFragment, Valuation, evaluate, parse_word, render_word
from .terms import (
    ONE, ZERO, FragmentClass, One, Plus, Seq, Star, Term, Var, Zero, IDENT, parse_term,
    render_term,
)

__all__ = [
    "value_record", "value_from_record", "valuation_to_dict", "valuation_from_dict",
    "dumps_valuation", "loads_valuation", "to_regex", "regex_value", "verdict_record",
]


def regex_value(expr: str, alphabet: Sequence[str]) -> Automaton:
    """Language of a complement-free term whose variables are alphabet symbols."""
    alphabet = tuple(alphabet)
    t = parse_term(expr, FragmentClass.KA)
    letters = {s: fa.from_words([(s,)], alphabet) for s in alphabet if IDENT.fullmatch(s)}
    return evaluate(t, Valuation(alphabet, letters))


def _finite_words(aut: Automaton) -> list | None:
    n = fa.longest_word_length(aut)
    if n == float("inf"):
        return None
    return list(fa.words(aut, int(n)))


def value_record(aut: Automaton) -> dict:
    """Canonical record: a finite or co-finite listing when possible, else a regex."""
    alphabet = aut.alphabet
    items = _finite_words(aut)
    if items is not None:
        return {"kind": "words", "items": [render_word(w, alphabet) for w in items]}
    items = _finite_words(fa.complement(aut))
    if items is not None:
        return {"kind": "cowords", "items": [render_word(w, alphabet) for w in items]}
    return {"kind": "regex", "expr": render_term(to_regex(aut))}


def value_from_record(record: dict, alphabet: Sequence[str]) -> Automaton:
    kind = record.get("kind")
    if kind in ("words", "cowords"):
        items = record.get("items")
        if not isinstance(items, list) or not all(isinstance(i, str) for i in items):
            raise ValueError(f"{kind} value needs a list of strings")
        aut = fa.from_words([parse_word(i, alphabet) for i in items], alphabet)
        return fa.complement(aut) if kind == "cowords" else aut
    if kind == "regex":
        expr = record.get("expr")
        if not isinstance(expr, str):
            raise ValueError("regex value needs an 'expr' string")
        return regex_value(expr, alphabet)
    raise ValueError(f"unknown value kind {kind!r}")


def valuation_to_dict(v: Valuation) -> dict:
    out = {}
    for x in sorted(v.assignment):
        out[x] = dict(v.sources[x]) if x in v.sources else value_record(v.value(x))
    return {"alphabet": list(v.alphabet), "vars": out}


def valuation_from_dict(data: dict) -> Valuation:
    if not isinstance(data, dict) or not isinstance(data.get("alphabet"), list):
        raise ValueError("valuation needs an 'alphabet' list")
    alphabet = tuple(data["alphabet"])
    if not all(isinstance(s, str) and s for s in alphabet):
        raise ValueError("alphabet symbols must be non-empty strings")
    records = data.get("vars", {})
    if not isinstance(records, dict):
        raise ValueError("'vars' must be an object")
    values = {x: value_from_record(r, alphabet) for x, r in records.items()}
    return Valuation(alphabet, values, {x: dict(r) for x, r in records.items()})


def dumps_valuation(v: Valuation, indent: int | None = None) -> str:
    return json.dumps(valuation_to_dict(v), ensure_ascii=False, indent=indent)


def loads_valuation(text: str) -> Valuation:
    return valuation_from_dict(json.loads(text))


# ----------------------------------------------------- state elimination

def _plus(a: Term, b: Term) -> Term:
    if isinstance(a, Zero):
        return b
    if isinstance(b, Zero) or a == b:
        return a
    return Plus(a, b)


def _seq(a: Term, b: Term) -> Term:
    if isinstance(a, Zero) or isinstance(b, Zero):
        return ZERO
    if isinstance(a, One):
        return b
    if isinstance(b, One):
        return a
    return Seq(a, b)


def _star(a: Term) -> Term:
    if isinstance(a, (Zero, One)):
        return ONE
    return a if isinstance(a, Star) else Star(a)


def to_regex(aut: Automaton) -> Term:
    """A complement-free term for the language (alphabet symbols must be identifiers)."""
    bad = [s for s in aut.alphabet if not IDENT.fullmatch(s)]
    if bad:
        raise ValueError(f"symbols {bad} cannot appear in a regex")
    a = fa.trim(fa.minimize(aut))
    if not a.accepting:
        return ZERO
    n = a.states
    start, final = n, n + 1
    edge: dict = {}

    def add(p, q, t):
        edge[(p, q)] = _plus(edge.get((p, q), ZERO), t)

    for p, x, q in sorted(a.transitions):
        add(p, q, Var(a.alphabet[x]))
    for s in sorted(a.initial):
        add(start, s, ONE)
    for s in sorted(a.accepting):
        add(s, final, ONE)
    for k in range(n):
        loop = _star(edge.pop((k, k), ZERO))
        ins = [(p, t) for (p, q), t in edge.items() if q == k]
        outs = [(q, t) for (p, q), t in edge.items() if p == k]
        for p, _ in ins:
            del edge[(p, k)]
        for q, _ in outs:
            del edge[(k, q)]
        for p, tin in ins:
            for q, tout in outs:
                add(p, q, _seq(_seq(tin, loop), tout))
    return edge.get((start, final), ZERO)


# ---------------------------------------------------------------- verdicts

def verdict_record(verdict) -> dict:
    if isinstance(verdict, Holds):
        return {"verdict": "holds", "procedure": verdict.procedure}
    if isinstance(verdict, UnsupportedFragment):
        return {"verdict": "unsupported", "reason": verdict.reason}
    if isinstance(verdict, Refuted):
        v = verdict.valuation
        return {
            "verdict": "refuted",
            "procedure": verdict.procedure,
            "lhs": render_term(verdict.lhs),
            "rhs": render_term(verdict.rhs),
            "side": verdict.side,
            "witness": render_word(verdict.witness, v.alphabet),
            "valuation": valuation_to_dict(v),
        }
    raise TypeError(f"not a verdict: {verdict!r}")
