import math

import pytest
from hypothesis import given, strategies as st

from kacd.terms import (
    CO_ONE, ONE, TOP, TOP_FULL, ZERO, Compl, CoVar, FragmentClass, FragmentError, ParseError, Plus,
    Seq, Star, Var, as_ext_word, classify_fragment, complement, count, ext_language,
    ext_word_to_term, is_star_free, occ, parse_ext_word, parse_term, render_ext_word, render_term,
    sup_length, term_size, variables,
)

from reference import concat, star as ref_star
from strategies import ext_words, terms

x, y = Var("x"), Var("y")
nx, ny = CoVar("x"), CoVar("y")


@pytest.mark.parametrize(
    ("text", "allowed", "expected"),
    [
        ("(x ; !y) + 1", FragmentClass.KA_CX, Plus(Seq(x, ny), ONE)),
        ("!1 x !x !1", FragmentClass.KA_CX_C1, Seq(Seq(Seq(CO_ONE, x), nx), CO_ONE)),
        ("x y z", FragmentClass.KA, Seq(Seq(x, y), Var("z"))),
        ("x + y + 0", FragmentClass.KA, Plus(Plus(x, y), ZERO)),
        ("x**", FragmentClass.KA, Star(Star(x))),
        ("!!x", FragmentClass.KA_CX, x),
        ("!0", FragmentClass.KA_FULL, TOP_FULL),
        ("x + y ; z*", FragmentClass.KA, Plus(x, Seq(y, Star(Var("z"))))),
    ],
)
def test_parse(text, allowed, expected):
    assert parse_term(text, allowed) == expected


@pytest.mark.parametrize(
    ("text", "allowed"),
    [("!(x+y)", FragmentClass.KA_CX_C1), ("!x", FragmentClass.KA), ("!1", FragmentClass.KA_CX)],
)
def test_parse_fragment_error(text, allowed):
    with pytest.raises(FragmentError):
        parse_term(text, allowed)


@pytest.mark.parametrize("text", ["", "(x", "x +", "x )", "2", "x $ y", "+x"])
def test_parse_syntax_error(text):
    with pytest.raises(ParseError) as info:
        parse_term(text)
    assert info.value.position >= 0


def test_parse_error_reports_position_and_expected():
    with pytest.raises(ParseError) as info:
        parse_term("x + ")
    assert info.value.position == 4
    assert "identifier" in info.value.expected


@pytest.mark.parametrize(
    ("term", "text"),
    [(Plus(x, nx), "x + !x"), (Star(Seq(x, y)), "(x ; y)*"), (CO_ONE, "!1"),
     (Compl(Plus(x, y)), "!(x + y)"), (Seq(x, Plus(y, ONE)), "x ; (y + 1)")],
)
def test_render(term, text):
    assert render_term(term) == text


@given(terms(full=True))
def test_render_round_trip(t):
    assert parse_term(render_term(t)) == t


@pytest.mark.parametrize(
    ("text", "cls"),
    [("x*", FragmentClass.KA), ("!x ; !1", FragmentClass.KA_CX_C1), ("x + !y", FragmentClass.KA_CX),
     ("!1", FragmentClass.KA_CX_C1), ("!(x ; y)", FragmentClass.KA_FULL), ("0 + 1", FragmentClass.KA)],
)
def test_classify(text, cls):
    assert classify_fragment(parse_term(text)) is cls


def test_complement_normalises_leaves():
    assert complement(x) == nx and complement(nx) == x
    assert complement(ONE) == CO_ONE and complement(CO_ONE) == ONE
    assert complement(ZERO) == TOP_FULL


@pytest.mark.parametrize(("text", "expected"), [("x ; !y", True), ("(x + y)*", False), ("!1", True)])
def test_star_free(text, expected):
    assert is_star_free(parse_term(text)) is expected


def test_variables_and_size():
    t = parse_term("x ; (!y + 1)*")
    assert variables(t) == {"x", "y"}
    assert term_size(t) == 6


def _ext_lang(t, n):
    """Extended-alphabet words of length ≤ n, letters kept as atoms."""
    if isinstance(t, (Var, CoVar)) or t == CO_ONE:
        return frozenset({(t,)})
    if t == ONE:
        return frozenset({()})
    if t == ZERO:
        return frozenset()
    if isinstance(t, Plus):
        return _ext_lang(t.left, n) | _ext_lang(t.right, n)
    if isinstance(t, Seq):
        return concat(_ext_lang(t.left, n), _ext_lang(t.right, n), n)
    return ref_star(_ext_lang(t.body, n), n)


def _letters(aut, w):
    return tuple(render_term(a) for a in w)


@given(terms(max_leaves=6))
def test_ext_language_matches_brute_force(t):
    aut = ext_language(t)
    expected = {_letters(aut, w) for w in _ext_lang(t, 4)}
    got = {w for w in (tuple(p) for p in _all(aut.alphabet, 4)) if aut.accepts(w)}
    assert got == expected


def _all(alphabet, n):
    import itertools
    return [w for k in range(n + 1) for w in itertools.product(alphabet, repeat=k)]


def test_ext_language_examples():
    a = ext_language(parse_term("!x"))
    assert a.alphabet == ("!x",) and a.accepts(("!x",)) and not a.accepts(())
    b = ext_language(parse_term("x + !x"))
    assert b.accepts(("x",)) and b.accepts(("!x",)) and not b.accepts(("x", "!x"))
    c = ext_language(parse_term("x*"))
    assert all(c.accepts(("x",) * k) for k in range(5))
    with pytest.raises(FragmentError):
        ext_language(parse_term("!(x + y)"))


@pytest.mark.parametrize(
    ("text", "expected"),
    [("x + !x", 1), ("1", 0), ("0", 0), ("x*", math.inf), ("x;(y+!1);x", 3), ("x ; 0", 0),
     ("(x ; 0)*", 0), ("x + y ; y ; !1", 3)],
)
def test_sup_length(text, expected):
    assert sup_length(parse_term(text)) == expected


def _positions(t) -> int:
    if isinstance(t, (Var, CoVar)) or t == CO_ONE:
        return 1
    if isinstance(t, (Plus, Seq)):
        return _positions(t.left) + _positions(t.right)
    return _positions(t.body) if isinstance(t, Star) else 0


@given(terms(max_leaves=4))
def test_sup_length_is_longest_word(t):
    # with p letter positions, a finite language has no word longer than p, and
    # an infinite one has a word of length in (p, 2p]
    p = _positions(t)
    longest = max((len(w) for w in _ext_lang(t, 2 * p)), default=0)
    n = sup_length(t)
    if n == math.inf:
        assert longest > p
    else:
        assert longest == n


@given(terms(max_leaves=4), terms(max_leaves=4))
def test_sup_length_of_sum_is_max(a, b):
    assert sup_length(Plus(a, b)) == max(sup_length(a), sup_length(b))


def test_occ_and_count():
    assert occ(()) == frozenset()
    assert occ(parse_ext_word("x !x !1")) == {x, nx, CO_ONE}
    assert occ(parse_ext_word("x x")) == {x}
    assert count(parse_ext_word("x y x"), {x}) == 2
    assert count((), {x, CO_ONE}) == 0
    assert count(parse_ext_word("!1 x !x"), {nx, CO_ONE}) == 2


@given(ext_words(), st.sets(st.sampled_from([x, nx, y, ny, CO_ONE])))
def test_count_partition(w, letters):
    rest = {x, nx, y, ny, CO_ONE} - letters
    assert count(w, letters) + count(w, rest) == len(w)


@given(ext_words())
def test_ext_word_round_trip(w):
    assert parse_ext_word(render_ext_word(w)) == w
    assert as_ext_word(ext_word_to_term(w)) == w


def test_top_shapes():
    assert TOP == parse_term("1 + !1")
    assert as_ext_word(parse_term("x (y !1)")) == (x, y, CO_ONE)
    assert as_ext_word(parse_term("x + y")) is None
