import itertools

import pytest
from hypothesis import given, settings

from kacd import automata as fa
from kacd.batch import Domain, SpanAlgebra, accepting_bits, evaluate_batch
from kacd.decide import (
    BudgetExceeded, DecideConfig, EnumerationMode, OracleBudget, Relation, decide_auto,
    decide_identity_inclusion, decide_starfree_inclusion, decide_universality,
    decide_variable_inclusion, decide_word_inclusion, oracle_refute,
)
from kacd.semantics import Holds, Refuted, UnsupportedFragment, Valuation, membership_dp
from kacd.terms import FragmentError, NotStarFree, parse_ext_word, parse_term, sup_length

from strategies import ext_words, terms

P = parse_term
INCLUSION = DecideConfig(enumeration_mode=EnumerationMode.FULL_INCLUSION)


def words_of(v, *names):
    return {x: sorted(fa.words(v.value(x), 4)) for x in names}


# -------------------------------------------------------------- identity

@pytest.mark.parametrize(
    ("rhs", "holds"), [("x + !x", True), ("x ; !x", False), ("(x ; !y) + !x + y", True)],
)
def test_identity(rhs, holds):
    r = decide_identity_inclusion(P(rhs))
    assert isinstance(r, Holds) == holds
    if not holds:
        assert r.witness == () and r.valuation.alphabet == () and r.verify()


def test_identity_rejects_full_complement():
    with pytest.raises(FragmentError):
        decide_identity_inclusion(P("!(x + y)"))


# -------------------------------------------------------------- variable

def test_variable_examples():
    r = decide_variable_inclusion("y", P("!x"))
    assert isinstance(r, Refuted) and r.verify()
    # first failure in enumeration order: x and y both {ε}, witness ε
    assert words_of(r.valuation, "x", "y") == {"x": [()], "y": [()]} and r.witness == ()
    r = decide_variable_inclusion("y", P("!1"))
    assert isinstance(r, Refuted) and r.witness == () and words_of(r.valuation, "y") == {"y": [()]}
    assert isinstance(decide_variable_inclusion("x", P("x + y")), Holds)


# ------------------------------------------------------------------ word

def test_word_examples():
    r = decide_word_inclusion(parse_ext_word("x"), P("!y"))
    assert isinstance(r, Refuted) and r.verify()
    assert isinstance(decide_word_inclusion(parse_ext_word("x !1"), P("x ; !1")), Holds)
    assert isinstance(decide_word_inclusion(parse_ext_word("x x"), P("x ; x*")), Holds)
    # no counterexample within a generous oracle budget either
    assert oracle_refute(P("x x"), P("x ; x*"), OracleBudget(2, 3, 2)) is None


def test_word_budget():
    with pytest.raises(BudgetExceeded):
        decide_word_inclusion(parse_ext_word("x x x"), P("x"), DecideConfig(max_block_count=2))
    with pytest.raises(BudgetExceeded):
        decide_word_inclusion(parse_ext_word("x y x y"), P("x ; y ; x ; y"),
                              DecideConfig(max_valuations=1000))


# ------------------------------------------------------------- star-free

def test_starfree_examples():
    r = decide_starfree_inclusion(P("!x"), P("!x ; !x"))
    assert isinstance(r, Refuted) and r.verify()
    # frozen from the enumeration; the oracle finds the same shape over one letter
    assert r.valuation.alphabet == ("l0",) and r.witness == ("l0",)
    assert words_of(r.valuation, "x") == {"x": [()]}
    assert oracle_refute(P("!x"), P("!x ; !x"), OracleBudget(1, 1, 1, cofinite=False)) is not None
    assert isinstance(decide_starfree_inclusion(P("x + !x"), P("!x + x")), Holds)
    r = decide_starfree_inclusion(P("1 + !1"), P("!x + !y"))
    assert isinstance(r, Refuted) and r.verify()


def test_starfree_errors():
    with pytest.raises(NotStarFree):
        decide_starfree_inclusion(P("x*"), P("x"))
    with pytest.raises(FragmentError):
        decide_starfree_inclusion(P("x"), P("!(x ; x)"))


# ----------------------------------------------------------- universality

def test_universality_examples():
    assert isinstance(decide_universality(P("x + !x")), Holds)
    r = decide_universality(P("!x ; !y"))
    assert isinstance(r, Refuted) and r.verify()
    r = decide_universality(P("x*"))
    assert isinstance(r, Refuted) and r.witness == ("l0",) and words_of(r.valuation, "x") == {"x": []}


# ------------------------------------------------------------------- auto

def test_auto_routing():
    assert decide_auto(P("1"), Relation.LE, P("x + !x")).procedure == "identity"
    assert decide_auto(P("x"), Relation.LE, P("x + y")).procedure == "variable"
    assert decide_auto(P("x y"), Relation.LE, P("x ; y")).procedure == "word"
    assert decide_auto(P("x + y"), Relation.LE, P("y + x")).procedure == "starfree"
    for top in ("1 + !1", "!1 + 1", "!0"):
        assert decide_auto(P(top), Relation.LE, P("x + !x")).procedure == "universality"
    r = decide_auto(P("x*"), Relation.LE, P("x"))
    assert r == UnsupportedFragment("left side has star, not a word")
    assert isinstance(decide_auto(P("x"), Relation.LE, P("!(x ; x)")), UnsupportedFragment)
    assert isinstance(decide_auto(P("!(x ; x)"), Relation.LE, P("x")), UnsupportedFragment)


def test_auto_equation():
    r = decide_auto(P("!x"), Relation.EQ, P("!x ; !x"))
    assert isinstance(r, Refuted) and r.verify()
    assert decide_auto(P("x + y"), "eq", P("y + x")) == Holds("starfree+starfree")
    r = decide_auto(P("x"), "eq", P("x*"))
    assert isinstance(r, UnsupportedFragment) and r.reason.startswith("right-to-left")
    # a refutation of the supported direction wins over an unsupported one
    r = decide_auto(P("x*"), "eq", P("x ; y"))
    assert isinstance(r, Refuted) and r.side == "RightNotInLeft" and r.verify()


# -------------------------------------------------------------- properties

@settings(max_examples=60)
@given(terms(star=False, max_leaves=4), terms(max_leaves=5))
def test_starfree_refutations_verify_and_use_small_alphabets(t1, t2):
    r = decide_starfree_inclusion(t1, t2)
    if isinstance(r, Refuted):
        assert r.verify()
        assert len(r.valuation.alphabet) <= sup_length(t1)


@settings(max_examples=60)
@given(terms(star=False, max_leaves=4), terms(max_leaves=5))
def test_modes_agree(t1, t2):
    a = decide_starfree_inclusion(t1, t2)
    b = decide_starfree_inclusion(t1, t2, INCLUSION)
    assert type(a) is type(b)


@settings(max_examples=60)
@given(terms(star=False, max_leaves=3), terms(max_leaves=4))
def test_holds_means_oracle_finds_nothing(t1, t2):
    r = decide_starfree_inclusion(t1, t2)
    found = oracle_refute(t1, t2, OracleBudget(max_alphabet=max(1, int(sup_length(t1)))))
    assert isinstance(r, Holds) == (found is None)


@settings(max_examples=40)
@given(ext_words(max_size=3), terms(max_leaves=5))
def test_parallel_is_deterministic(u, t):
    seq = decide_word_inclusion(u, t)
    par = decide_word_inclusion(u, t, DecideConfig(parallel=True, chunk_size=16))
    assert type(seq) is type(par)
    if isinstance(seq, Refuted):
        assert seq.valuation == par.valuation and seq.witness == par.witness


def test_identical_inputs_identical_verdicts():
    a = decide_starfree_inclusion(P("!x ; y"), P("y ; !x"))
    b = decide_starfree_inclusion(P("!x ; y"), P("y ; !x"))
    assert a.valuation == b.valuation and a.witness == b.witness


# ------------------------------------------------------------------ oracle

def test_oracle_examples():
    v, w = oracle_refute(P("!x"), P("!x ; !x"))
    assert w == ("a",) and v.alphabet == ("a",)
    assert not fa.membership(v.value("x"), ("a",))
    assert oracle_refute(P("x"), P("x")) is None
    v, w = oracle_refute(P("x ; y"), P("y ; x"))
    assert w == ("a", "b") and words_of(v, "x", "y") == {"x": [("a",)], "y": [("b",)]}


def test_oracle_records_sources():
    v, _ = oracle_refute(P("x ; y"), P("y ; x"))
    assert v.sources["x"] == {"kind": "words", "items": ["a"]}


# ------------------------------------------------------------------ batch

def test_span_blocks_order():
    alg = SpanAlgebra(2)
    assert alg.blocks == ((0, 0), (0, 1), (0, 2), (1, 2))
    assert alg.block_words(0b0101, ("l0", "l1")) == [(), ("l0", "l1")]


@settings(max_examples=60)
@given(terms(max_leaves=6))
def test_span_batch_matches_membership(t):
    m = 2
    alg = SpanAlgebra.for_m(m)
    letters = ("l0", "l1")
    subsets = range(1 << len(alg.blocks))
    dom = Domain(alg, tuple(alg.block_relation(s) for s in subsets))
    names = ("x", "y")
    total = len(dom.values) ** 2
    bits = accepting_bits(t, dom, names, 0, total)
    rels = evaluate_batch(t, dom, names, 0, total)
    for k in range(0, total, 37):
        sx, sy = divmod(k, len(dom.values))
        v = Valuation.of_words(letters, {"x": alg.block_words(sx, letters),
                                         "y": alg.block_words(sy, letters)})
        assert bool(bits >> k & 1) == membership_dp(letters, t, v)
        for i, j in itertools.combinations_with_replacement(range(m + 1), 2):
            assert bool(rels[k] >> (i * (m + 1) + j) & 1) == membership_dp(letters[i:j], t, v)
