import pytest
from hypothesis import given
from hypothesis import strategies as st

from fcrs.errors import InputError
from fcrs.words import find_occurrences, format_word, length_in, parse_word, splice

LETTERS = st.sampled_from(["a", "b", "c", "b1"])
WORDS = st.lists(LETTERS, max_size=10).map(tuple)


def w(text):
    return parse_word(text)


def test_parse_and_format_round_trip():
    assert w("b a a c") == ("b", "a", "a", "c")
    assert format_word(("b1", "a")) == "b1 a"
    assert parse_word(format_word(("x", "y", "x"))) == ("x", "y", "x")


def test_parse_rejects_empty():
    with pytest.raises(InputError):
        parse_word("   ")


def test_length_in():
    assert length_in(w("b a a c"), {"b", "c"}) == 2
    assert length_in(w("a a a"), {"b"}) == 0
    word = w("a b a")
    assert length_in(word, {"a", "b"}) == len(word)


def test_find_occurrences_overlapping():
    assert find_occurrences(w("a a a"), w("a a")) == [0, 1]
    assert find_occurrences(w("a b a b"), w("a b")) == [0, 2]
    assert find_occurrences(w("a b"), w("b a")) == []


def test_find_occurrences_empty_factor_rejected():
    with pytest.raises(InputError):
        find_occurrences(w("a"), ())


def test_splice():
    assert splice(w("a a a"), 0, 3, w("a")) == ("a",)
    assert splice(w("b a c"), 1, 1, w("a a")) == ("b", "a", "a", "c")
    assert splice(w("a b"), 2, 0, w("c")) == ("a", "b", "c")


def test_splice_out_of_range():
    with pytest.raises(InputError):
        splice(w("a a"), 1, 2, w("b"))
    with pytest.raises(InputError):
        splice(w("a a"), 3, 0, w("b"))


@given(WORDS)
def test_counts_add_over_disjoint_letter_sets(word):
    assert length_in(word, {"a", "b1"}) + length_in(word, {"b", "c"}) == length_in(
        word, {"a", "b", "c", "b1"}
    )


@given(WORDS, st.lists(LETTERS, min_size=1, max_size=3).map(tuple))
def test_occurrences_increase_and_verify(word, factor):
    positions = find_occurrences(word, factor)
    assert positions == sorted(set(positions))
    for i in positions:
        assert word[i : i + len(factor)] == factor


@given(WORDS, st.lists(LETTERS, min_size=1, max_size=3).map(tuple), st.data())
def test_splice_then_find(word, replacement, data):
    i = data.draw(st.integers(0, len(word)))
    old_len = data.draw(st.integers(0, len(word) - i))
    spliced = splice(word, i, old_len, replacement)
    assert i in find_occurrences(spliced, replacement)
