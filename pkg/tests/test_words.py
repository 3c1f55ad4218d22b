from collections import Counter, defaultdict
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from recipsum import DomainError, ResourceLimitError, Word, apply, check_length_uniqueness
from recipsum import level_multiset, preimages, sigma
from recipsum.words import DIAMOND, STAR, brute_preimages, iter_levels, words_of_length

words_text = st.text(alphabet="ds", max_size=6)


def exhaustive_table(b, n_max):
    """Every word of length <= n_max - b, grouped by its value at b (capped).

    Built by applying each word letter by letter from the right; values
    past n_max collapse to a sentinel but the word is still enumerated.
    """
    cap = n_max + 1
    table = defaultdict(set)
    level = {(): b}
    for _ in range(n_max - b + 1):
        for letters, v in level.items():
            if v <= n_max:
                table[v].add(Word(letters))
        nxt = {}
        for letters, v in level.items():
            for letter in (DIAMOND, STAR):
                nv = cap if v >= cap else min(cap, letter(v))
                nxt[(letter,) + letters] = nv
        level = nxt
    return table


def test_paradigm_word():
    w = Word.parse("dssddd")
    assert apply(w, 1) == 421
    assert len(w) == 6
    assert w.pretty() == "◇★²◇³"
    assert w(1) == 421


def test_small_values():
    assert apply("", 17) == 17
    assert apply("dddd", 2) == 6 == apply("s", 2)
    assert Word.parse("").pretty() == "ε"


def test_word_algebra():
    u, v = Word.parse("ds"), Word.parse("sd")
    assert (u + v)(3) == u(v(3))
    assert str(u + v) == "dssd"


def test_word_errors():
    with pytest.raises(DomainError):
        apply("ds", 0)
    with pytest.raises(DomainError):
        Word.parse("dx")


@pytest.mark.parametrize("k, b, expected", [
    (0, 2, [2]),
    (1, 2, [3, 6]),
    (2, 2, [4, 7, 12, 42]),
    (3, 2, [5, 8, 13, 20, 43, 56, 156, 1806]),
])
def test_level_examples(k, b, expected):
    lvl = level_multiset(k, b)
    assert list(lvl.values) == expected
    assert lvl.simple


def test_level_matches_per_word_enumeration():
    for b in (1, 2, 3, 7):
        for k in range(7):
            brute = sorted(apply(w, b) for w in words_of_length(k))
            assert list(level_multiset(k, b).values) == brute


def test_base_one_keeps_multiplicities():
    lvl = level_multiset(2, 1)
    assert lvl.counts == Counter({3: 2, 6: 2})
    assert not lvl.simple
    with pytest.raises(DomainError):
        lvl.as_finset()


@pytest.mark.parametrize("b", [2, 3, 5])
def test_level_laws(b):
    for lvl in iter_levels(b, 9):
        assert len(lvl) == 2**lvl.k
        assert lvl.simple
        assert sigma(lvl.values) == Fraction(1, b)
        assert lvl.values[0] == b + lvl.k
        assert lvl.values[-1] == apply("s" * lvl.k, b)


def test_level_caps():
    with pytest.raises(ResourceLimitError) as info:
        level_multiset(21, 2)
    assert info.value.cap == "max_k"
    with pytest.raises(ResourceLimitError) as info:
        level_multiset(12, 2, digit_cap=50)
    assert info.value.cap == "digit_cap"
    with pytest.raises(DomainError):
        level_multiset(-1, 2)


def test_preimage_examples():
    assert preimages(2, 2) == (Word(),)
    assert set(preimages(2, 6)) == {Word.parse("dddd"), Word.parse("s")}
    assert preimages(2, 5) == (Word.parse("ddd"),)
    with pytest.raises(DomainError):
        preimages(3, 2)
    with pytest.raises(DomainError):
        preimages(1, 5)


@pytest.mark.parametrize("b", [2, 3])
def test_preimages_match_exhaustive_enumeration(b):
    table = exhaustive_table(b, 20)
    for n in range(b, 21):
        assert set(preimages(b, n)) == table[n], n
        assert brute_preimages(b, n) == table[n]


def test_length_uniqueness_examples():
    rep = check_length_uniqueness(2, 6)
    assert rep.ok
    assert sorted(len(w) for w in preimages(2, 6)) == [1, 4]
    assert check_length_uniqueness(2, 2).words_seen == 1
    with pytest.raises(DomainError):
        check_length_uniqueness(1, 10)


def test_length_uniqueness_to_1000():
    rep = check_length_uniqueness(2, 1000)
    assert rep.ok
    assert rep.checked == 999


@given(words_text.filter(bool), st.integers(1, 10**6), st.integers(1, 10**6))
def test_apply_is_strictly_monotone(text, n, m):
    if n == m:
        return
    lo, hi = sorted((n, m))
    assert apply(text, lo) < apply(text, hi)


@given(words_text, st.integers(2, 30))
def test_every_value_finds_its_word(text, b):
    w = Word.parse(text)
    n = apply(w, b)
    if n > 5000:  # words are spelled out, so cost grows with n squared
        return
    ws = preimages(b, n)
    assert w in ws
    assert len({len(x) for x in ws}) == len(ws)
    assert max(ws, key=len) == Word.diamonds(n - b)


@given(st.integers(0, 7))
def test_words_of_length_is_complete(k):
    ws = list(words_of_length(k))
    assert len(ws) == 2**k == len(set(ws))
    assert all(len(w) == k for w in ws)
    assert {str(w) for w in ws} == {"".join(p) for p in product("ds", repeat=k)}


def test_preimage_length_cap():
    with pytest.raises(ResourceLimitError) as info:
        preimages(2, 10**6)
    assert info.value.cap == "length_cap"
    assert len(preimages(2, 60, length_cap=58)) >= 1
