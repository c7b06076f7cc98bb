import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import brute_force_euclidean
from vondyck.presentation import (CurvatureClass, Letter, VonDyckParams, WordSyntaxError,
                                  classify_curvature, euclidean_triples, format_word,
                                  free_reduce, invert_word, parse_word, torsion_normalize)

X, Y, XI, YI = Letter.X, Letter.Y, Letter.Xinv, Letter.Yinv
letters = st.sampled_from(list(Letter))
triples = st.tuples(*[st.integers(2, 40)] * 3)


def test_params_validation():
    with pytest.raises(ValueError):
        VonDyckParams(1, 3, 3)
    with pytest.raises(ValueError):
        VonDyckParams(2, 3, 2.5)
    assert str(VonDyckParams(2, 3, 7)) == "(2,3,7)"


@pytest.mark.parametrize("abc,expected", [
    ((2, 3, 5), CurvatureClass.SPHERICAL),
    ((3, 3, 3), CurvatureClass.EUCLIDEAN),
    ((4, 4, 4), CurvatureClass.HYPERBOLIC),
    ((2, 2, 100), CurvatureClass.SPHERICAL),
    ((2, 3, 6), CurvatureClass.EUCLIDEAN),
    ((2, 3, 7), CurvatureClass.HYPERBOLIC),
])
def test_classify_examples(abc, expected):
    assert classify_curvature(abc) == expected


@given(triples)
def test_classify_matches_rational_sign_and_is_symmetric(abc):
    s = sum(Fraction(1, v) for v in abc) - 1
    want = (CurvatureClass.SPHERICAL if s > 0 else
            CurvatureClass.EUCLIDEAN if s == 0 else CurvatureClass.HYPERBOLIC)
    for perm in itertools.permutations(abc):
        assert classify_curvature(perm) == want


def test_euclidean_triples_against_brute_force():
    got = {(p.a, p.b, p.c) for p in euclidean_triples()}
    assert got == brute_force_euclidean(12) == {(3, 3, 3), (2, 4, 4), (2, 3, 6)}
    assert VonDyckParams(3, 3, 3) in euclidean_triples()
    assert VonDyckParams(4, 4, 4) not in euclidean_triples()


def test_parse_examples():
    assert parse_word("x y") == (X, Y)
    assert parse_word("x^-2") == (XI, XI)
    assert parse_word("x x^-1") == (X, XI)
    assert parse_word("X Y^2") == (XI, YI, YI)
    assert parse_word("1") == ()
    assert parse_word("") == ()
    assert parse_word("xyx") == (X, Y, X)


@pytest.mark.parametrize("text,pos", [("x z", 2), ("x^", 1), ("q", 0)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(WordSyntaxError) as info:
        parse_word(text)
    assert info.value.pos == pos


def test_format_examples():
    assert format_word(()) == "1"
    assert format_word((X, X, YI)) == "x^2 y^-1"
    assert format_word((X, Y, X)) == "x y x"


def test_free_reduce_examples():
    assert free_reduce((X, XI)) == ()
    assert free_reduce((X, Y, YI, X)) == (X, X)
    assert free_reduce((X, Y, X)) == (X, Y, X)
    assert free_reduce((Y, X, XI, YI, X)) == (X,)


def _is_reduced(w):
    return all(a ^ b != 2 for a, b in zip(w, w[1:]))


def test_free_reduce_idempotent_exhaustive_to_length_12():
    seen_outputs = set()
    for n in range(13):
        for w in itertools.product(Letter, repeat=n):
            seen_outputs.add(free_reduce(w))
    # every output is reduced and a fixed point
    for r in seen_outputs:
        assert _is_reduced(r)
        assert free_reduce(r) == r
    # and every reduced word of length <= 12 occurs as an output
    assert len(seen_outputs) == 1 + sum(4 * 3 ** (k - 1) for k in range(1, 13))


def test_parse_format_round_trip_exhaustive_to_length_8():
    layer = [()]
    count = 0
    for _ in range(8):
        nxt = []
        for w in layer:
            for l in Letter:
                if w and w[-1] ^ l == 2:
                    continue
                nxt.append(w + (l,))
        for w in nxt:
            assert parse_word(format_word(w)) == w
            count += 1
        layer = nxt
    assert count == sum(4 * 3 ** (k - 1) for k in range(1, 9))


@given(st.lists(letters, max_size=30))
def test_inverse_word_cancels(w):
    assert free_reduce(tuple(w) + invert_word(w)) == ()


@pytest.mark.parametrize("w,abc,expected", [
    ((X,) * 4, (4, 4, 4), ()),
    ((Y,) * 4, (2, 3, 7), (Y,)),
    ((X, Y), (2, 3, 7), (X, Y)),
    ((X, X, X), (4, 4, 4), (XI,)),
    ((X, X), (4, 4, 4), (X, X)),
    ((Y, X, X, Y), (2, 3, 7), (YI,)),
])
def test_torsion_normalize_examples(w, abc, expected):
    assert torsion_normalize(w, abc) == expected


@given(st.lists(letters, max_size=20), triples)
def test_torsion_normalize_is_stable_and_exponents_bounded(w, abc):
    p = VonDyckParams(*abc)
    out = torsion_normalize(w, p)
    assert _is_reduced(out)
    assert torsion_normalize(out, p) == out
    for base, run in itertools.groupby(out, key=lambda l: l.base):
        n = len(list(run))
        order = p.a if base == X else p.b
        assert 2 * n <= order
