import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from kacd import automata as fa
from kacd.corpus import ext_words_up_to
from kacd.hierarchy import sample_valuation
from kacd.semantics import evaluate
from kacd.terms import CO_ONE, CoVar, Var, ext_word_to_term, parse_ext_word
from kacd.words import (
    BlockDecomposition, Equal, NotActuallyDistinct, NotEqual, WordTheoryLevel, decide_e0,
    decide_e1, decide_e2, decompose_blocks, is_absorbing, refuting_valuation, swap_segment,
)

from strategies import ext_words

W = parse_ext_word
x, nx = Var("x"), CoVar("x")


def _eq(verdict, justification):
    return isinstance(verdict, Equal) and verdict.justification == justification


# ------------------------------------------------------------------- level 0

def test_e0_examples():
    assert _eq(decide_e0(W("x !x"), W("!1")), "OccRule")
    assert _eq(decide_e0(W("x y"), W("y x")), "OccRule")
    r = decide_e0(W("x"), W("y"))
    assert isinstance(r, NotEqual) and r.verify() and r.witness == ()
    # profile x = true, y = false: ε is in v(x) only
    assert fa.membership(r.valuation.value("x"), ()) and not fa.membership(r.valuation.value("y"), ())


def test_absorbing():
    assert is_absorbing(W("x !1")) and is_absorbing(W("y x !x"))
    assert not is_absorbing(W("x !y")) and not is_absorbing(())


# ------------------------------------------------------------------- level 1

def test_e1_examples():
    assert _eq(decide_e1(W("x y"), W("y x")), "ParikhRule")
    assert _eq(decide_e1(W("!1 x"), W("x !1")), "ParikhRule")
    r = decide_e1(W("x"), W("x x"))
    assert isinstance(r, NotEqual) and r.verify()
    # m = 1, v(x) = a+, the shortest word of v̂(x) is a, and a ∉ v̂(x x)
    assert r.witness == ("a",) and r.valuation.alphabet == ("a",)
    assert r.construction == "unary-min-length" and r.side == "LeftNotInRight"


def test_e1_witness_is_minimal_length():
    r = decide_e1(W("x y y"), W("x x y"))
    left = evaluate(ext_word_to_term(r.left), r.valuation)
    assert min(len(w) for w in fa.words(left, 10)) == len(r.witness)


# ------------------------------------------------------------------- level 2

def test_decompose_examples():
    assert decompose_blocks(W("!1 x !x !1")) == BlockDecomposition((), ((x, nx),), (), 2)
    assert decompose_blocks(W("x y")) == BlockDecomposition(W("x y"), (), (), 0)
    assert decompose_blocks(W("!1 !1")) == BlockDecomposition((), ((),), (), 2)


@given(ext_words(max_size=6))
def test_decompose_reassembles(u):
    d = decompose_blocks(u)
    assert d.reassemble() == u
    assert all(CO_ONE not in s for s in (d.prefix, d.suffix, *d.segments))


def test_swap_segment():
    assert swap_segment(W("x x !x")) == W("!x x x")
    assert swap_segment(W("x !x x !x !x")) == W("!x x !x !x x")
    assert swap_segment(W("x !x x")) is None
    assert swap_segment(W("x y")) is None
    assert swap_segment(W("x")) is None


@given(ext_words(names=("x",), co_one=False, max_size=8))
def test_swap_is_an_involution(seg):
    out = swap_segment(seg)
    if out is not None:
        assert out != seg and swap_segment(out) == seg


def test_e2_examples():
    r = decide_e2(W("!1 z !z !1"), W("!1 !z z !1"))
    assert _eq(r, "SwapRule") and r.swapped_segments == (0,)
    r = decide_e2(W("x !x"), W("!x x"))
    assert isinstance(r, NotEqual) and r.verify()
    r = decide_e2(W("!1 z !z z !1"), W("!1 !z z z !1"))
    assert isinstance(r, NotEqual) and r.verify() and r.construction == "positive-adjacency"
    assert r.valuation.alphabet == ("a", "b")


def test_e2_two_letter_refutation_for_commutation():
    r = decide_e2(W("x y"), W("y x"))
    assert isinstance(r, NotEqual) and r.witness == ("a", "b") and r.verify()


def test_negative_letter_template():
    r = decide_e2(W("!x !y"), W("!y !x"))
    assert isinstance(r, NotEqual) and r.construction == "negative-letter" and r.verify()
    assert r.valuation.alphabet == ("a", "b")


def test_refuting_valuation_rejects_equal_words():
    with pytest.raises(NotActuallyDistinct):
        refuting_valuation(W("!1 x !x !1"), W("!1 !x x !1"), WordTheoryLevel.L2)
    with pytest.raises(NotActuallyDistinct):
        refuting_valuation(W("x y"), W("y x"), WordTheoryLevel.L1)


# ------------------------------------------------------------- properties

def _axiom_instances():
    for k in (1, 2):
        for runs in itertools.product((1, 2), repeat=2 * k):
            left, right = [CO_ONE], [CO_ONE]
            for c, d in zip(runs[0::2], runs[1::2]):
                left += [x] * c + [nx] * d
                right += [nx] * d + [x] * c
            yield tuple(left + [CO_ONE]), tuple(right + [CO_ONE])


@pytest.mark.parametrize(("u", "w"), list(_axiom_instances()))
def test_swap_axiom_is_sound(u, w):
    assert _eq(decide_e2(u, w), "SwapRule")
    rng = random.Random(len(u))
    for _ in range(25):
        v = sample_valuation(rng, ("x",), ("a", "b"), max_words=3, max_len=2)
        assert fa.equivalent(evaluate(ext_word_to_term(u), v), evaluate(ext_word_to_term(w), v)) is None


@settings(max_examples=50)
@given(ext_words(max_size=4), st.randoms(use_true_random=False))
def test_level_two_equal_is_sound(u, rng):
    # build a partner that decide_e2 calls equal by swapping every swappable segment
    d = decompose_blocks(u)
    segs = tuple(swap_segment(s) or s for s in d.segments)
    w = BlockDecomposition(d.prefix, segs, d.suffix, d.notone_count).reassemble()
    assert isinstance(decide_e2(u, w), Equal)
    for _ in range(4):
        v = sample_valuation(rng, ("x", "y"), ("a", "b"), max_words=3, max_len=2)
        assert fa.equivalent(evaluate(ext_word_to_term(u), v), evaluate(ext_word_to_term(w), v)) is None


@settings(max_examples=50)
@given(ext_words(max_size=4), st.randoms(use_true_random=False))
def test_level_one_equal_is_sound(u, rng):
    w = tuple(rng.sample(u, len(u)))
    assert isinstance(decide_e1(u, w), Equal)
    for _ in range(4):
        v = sample_valuation(rng, ("x", "y"), ("a",), max_words=3, max_len=3)
        assert fa.equivalent(evaluate(ext_word_to_term(u), v), evaluate(ext_word_to_term(w), v)) is None


def test_theory_inclusion_exhaustive():
    ws = ext_words_up_to(4, (x, nx, CO_ONE))
    for u, w in itertools.product(ws, ws):
        r2 = decide_e2(u, w)
        if isinstance(r2, Equal):
            assert isinstance(decide_e1(u, w), Equal)
        r1 = decide_e1(u, w)
        if isinstance(r1, Equal):
            assert isinstance(decide_e0(u, w), Equal)
        for r in (r1, r2):
            if isinstance(r, NotEqual):
                assert r.verify()
