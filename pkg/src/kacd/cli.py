"""Command-line front end.  Every command prints JSON lines on stdout.

Exit codes: 0 holds/equal, 1 refuted/not equal, 2 unsupported or out of
budget, 3 bad input (or a failed ``--verify`` replay).
"""

from __future__ import annotations

import argparse
import dataclasses
import itertools
import json
import os
import sys

from . import automata as fa
from .decide import (
    BudgetExceeded, DecideConfig, EnumerationMode, OracleBudget, Relation, decide_auto,
    decide_identity_inclusion, decide_starfree_inclusion, decide_universality,
    decide_variable_inclusion, decide_word_inclusion, oracle_refute,
)
from .formats import dumps_valuation, loads_valuation, valuation_to_dict, verdict_record
from .hierarchy import check_membership_side, separation_counterexample, separation_terms
from .semantics import (
    Holds, Refuted, UnsupportedFragment, evaluate, parse_word, render_word, std_lang_equiv,
    words_to_letters,
)
from .terms import (
    ONE, TOP, TOP_FULL, CO_ONE, NotStarFree, Plus, Var, as_ext_word, parse_ext_word,
    parse_term, render_ext_word, render_term,
)
from .words import Equal, NotEqual, NotActuallyDistinct, WordTheoryLevel, decide_word_theory

EXIT_HOLDS, EXIT_REFUTED, EXIT_UNSUPPORTED, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def seed_from_env() -> int:
    raw = os.environ.get("KACD_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"KACD_SEED must be an integer, got {raw!r}") from None


def _emit(record: dict, args) -> None:
    if args.pretty:
        print(json.dumps(record, ensure_ascii=False, indent=2))
    else:
        print(json.dumps(record, ensure_ascii=False))


def _verify(ok: bool) -> None:
    if not ok:
        raise InputError("verification replay failed: witness does not separate the sides")


def _code(verdict) -> int:
    if isinstance(verdict, (Holds, Equal)):
        return EXIT_HOLDS
    if isinstance(verdict, (Refuted, NotEqual)):
        return EXIT_REFUTED
    return EXIT_UNSUPPORTED


# ------------------------------------------------------------------ check

_TOP_SHAPES = (TOP, Plus(CO_ONE, ONE), TOP_FULL)


def _forced(lhs, rhs, fragment: str, config: DecideConfig):
    if fragment == "identity":
        if lhs != ONE:
            return UnsupportedFragment("identity procedure needs left side 1")
        return decide_identity_inclusion(rhs)
    if fragment == "variable":
        if not isinstance(lhs, Var):
            return UnsupportedFragment("variable procedure needs a variable on the left")
        return decide_variable_inclusion(lhs.name, rhs)
    if fragment == "universality":
        if lhs not in _TOP_SHAPES:
            return UnsupportedFragment("universality procedure needs ⊤ on the left")
        return decide_universality(rhs)
    if fragment == "word":
        word = as_ext_word(lhs)
        if word is None:
            return UnsupportedFragment("word procedure needs an extended word on the left")
        return decide_word_inclusion(word, rhs, config)
    try:
        return decide_starfree_inclusion(lhs, rhs, config)
    except NotStarFree:
        return UnsupportedFragment("starfree procedure needs a star-free left side")


def _check(args) -> int:
    lhs, rhs = parse_term(args.lhs), parse_term(args.rhs)
    config = DecideConfig(enumeration_mode=EnumerationMode(args.mode), parallel=args.parallel)
    try:
        if args.fragment == "auto":
            verdict = decide_auto(lhs, Relation(args.rel), rhs, config)
        else:
            verdict = _forced(lhs, rhs, args.fragment, config)
            if args.rel == "eq" and isinstance(verdict, Holds):
                back = _forced(rhs, lhs, args.fragment, config)
                if isinstance(back, Refuted):
                    back = dataclasses.replace(back, side="RightNotInLeft")
                verdict = back if not isinstance(back, Holds) else verdict
    except BudgetExceeded as e:
        _emit({"verdict": "budget-exceeded", "reason": str(e)}, args)
        return EXIT_UNSUPPORTED
    except fa.AlphabetMismatch as e:
        raise InputError(str(e)) from None
    if isinstance(verdict, UnsupportedFragment):
        _emit(verdict_record(verdict), args)
        return EXIT_UNSUPPORTED
    if args.verify and isinstance(verdict, Refuted):
        _verify(verdict.verify())
    _emit(verdict_record(verdict), args)
    return _code(verdict)


def _lang_equiv(args) -> int:
    verdict = std_lang_equiv(parse_term(args.t1), parse_term(args.t2))
    if args.verify and isinstance(verdict, Refuted):
        _verify(verdict.verify())
    _emit(verdict_record(verdict), args)
    return _code(verdict)


# ------------------------------------------------------------ word theory

def word_verdict_record(verdict, level: WordTheoryLevel) -> dict:
    if isinstance(verdict, Equal):
        out = {"verdict": "equal", "level": int(level), "justification": verdict.justification}
        if verdict.justification == "SwapRule":
            out["segments"] = list(verdict.swapped_segments)
        return out
    v = verdict.valuation
    return {
        "verdict": "not-equal",
        "level": int(level),
        "construction": verdict.construction,
        "left": render_ext_word(verdict.left),
        "right": render_ext_word(verdict.right),
        "side": verdict.side,
        "witness": render_word(verdict.witness, v.alphabet),
        "valuation": valuation_to_dict(v),
    }


def _word_theory(args) -> int:
    level = WordTheoryLevel(args.level)
    u, w = parse_ext_word(args.u), parse_ext_word(args.w)
    try:
        verdict = decide_word_theory(u, w, level)
    except NotActuallyDistinct as e:
        _emit({"verdict": "internal-error", "reason": str(e)}, args)
        return EXIT_UNSUPPORTED
    if args.verify and isinstance(verdict, NotEqual):
        _verify(verdict.verify())
    _emit(word_verdict_record(verdict, level), args)
    return _code(verdict)


# --------------------------------------------------- valuations from files

def _load_valuation(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads_valuation(fh.read())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def _eval(args) -> int:
    v = _load_valuation(args.valuation)
    t = parse_term(args.term)
    aut = evaluate(t, v)
    record = {"term": render_term(t), "alphabet": list(v.alphabet)}
    if args.member is not None:
        word = parse_word(args.member, v.alphabet)
        record["word"] = args.member
        record["member"] = fa.membership(aut, word)
    else:
        dfa = fa.minimize(aut)
        longest = fa.longest_word_length(dfa)
        record.update({
            "states": dfa.states,
            "empty": fa.is_empty(dfa),
            "finite": longest != float("inf"),
            "longest": None if longest == float("inf") else int(longest),
            "sample": [render_word(w, v.alphabet) for w in
                       itertools.islice(fa.words(dfa, args.sample_len), args.sample)],
        })
    _emit(record, args)
    return EXIT_HOLDS


def _w2l(args) -> int:
    v = _load_valuation(args.valuation)
    words = [parse_word(w, v.alphabet) for w in args.words.split(",")] if args.words else []
    out = words_to_letters(v, words)
    print(dumps_valuation(out, indent=2 if args.pretty else None))
    return EXIT_HOLDS


# ---------------------------------------------------------------- hierarchy

def _hierarchy(args) -> int:
    if args.n < 1:
        raise InputError("--n must be at least 1")
    t1, t2 = separation_terms(args.n)
    v, witness = separation_counterexample(args.n)
    in_t1 = fa.membership(evaluate(t1, v), witness)
    in_t2 = fa.membership(evaluate(t2, v), witness)
    report = check_membership_side(args.n, args.samples, seed_from_env())
    _emit({
        "n": args.n,
        "t1": render_term(t1),
        "t2": render_term(t2),
        "valuation": valuation_to_dict(v),
        "witness": render_word(witness, v.alphabet),
        "witness_in_t1": in_t1,
        "witness_in_t2": in_t2,
        "small_alphabet_samples": report.samples,
        "small_alphabet_seed": report.seed,
        "small_alphabet_violations": [
            {"valuation": valuation_to_dict(u), "witness": render_word(w, u.alphabet)}
            for u, w in report.violations],
    }, args)
    return EXIT_HOLDS if in_t1 and not in_t2 and report.ok else EXIT_REFUTED


def _oracle(args) -> int:
    t1, t2 = parse_term(args.t1), parse_term(args.t2)
    budget = OracleBudget(max_alphabet=args.max_alphabet, max_value_len=args.max_value_len,
                          max_values_per_var=args.max_values_per_var,
                          time_ms=args.budget_ms)
    found = oracle_refute(t1, t2, budget)
    if found is None:
        _emit({"verdict": "none-within-budget"}, args)
        return EXIT_UNSUPPORTED
    verdict = Refuted(found[0], found[1], t1, t2, "oracle")
    if args.verify:
        _verify(verdict.verify())
    _emit(verdict_record(verdict), args)
    return EXIT_REFUTED


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON output")
    common.add_argument("--verify", action="store_true",
                        help="replay refutations through evaluation; fail on mismatch")
    p = argparse.ArgumentParser(prog="kacd", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="decide an inclusion or equation")
    c.add_argument("lhs")
    c.add_argument("rel", choices=["le", "eq"])
    c.add_argument("rhs")
    c.add_argument("--fragment", default="auto",
                   choices=["auto", "identity", "variable", "word", "starfree", "universality"])
    c.add_argument("--mode", default="fullword", choices=[m.value for m in EnumerationMode])
    c.add_argument("--parallel", action="store_true")
    c.set_defaults(run=_check)

    s = sub.add_parser("lang-equiv", parents=[common],
                       help="compare standard regular-expression languages")
    s.add_argument("t1")
    s.add_argument("t2")
    s.set_defaults(run=_lang_equiv)

    w = sub.add_parser("word-theory", parents=[common], help="compare two extended words")
    w.add_argument("--level", type=int, choices=[0, 1, 2], required=True)
    w.add_argument("u")
    w.add_argument("w")
    w.set_defaults(run=_word_theory)

    e = sub.add_parser("eval", parents=[common], help="evaluate a term under a valuation file")
    e.add_argument("--valuation", required=True)
    e.add_argument("--term", required=True)
    e.add_argument("--member", default=None)
    e.add_argument("--sample", type=int, default=8, help="number of sample words to list")
    e.add_argument("--sample-len", type=int, default=4)
    e.set_defaults(run=_eval)

    t = sub.add_parser("w2l", parents=[common], help="words-to-letters transformation")
    t.add_argument("--valuation", required=True)
    t.add_argument("--words", required=True, help="comma-separated factor words")
    t.set_defaults(run=_w2l)

    h = sub.add_parser("hierarchy", parents=[common], help="separation terms transcript")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--samples", type=int, default=20)
    h.set_defaults(run=_hierarchy)

    o = sub.add_parser("oracle-refute", parents=[common], help="bounded counterexample search")
    o.add_argument("t1")
    o.add_argument("t2")
    o.add_argument("--max-alphabet", type=int, default=2)
    o.add_argument("--max-value-len", type=int, default=2)
    o.add_argument("--max-values-per-var", type=int, default=2)
    o.add_argument("--budget-ms", type=int, default=None)
    o.set_defaults(run=_oracle)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_HOLDS
    try:
        return args.run(args)
    except (InputError, ValueError, KeyError) as e:
        print(f"kacd: error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
