import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fcrs.errors import BudgetExhausted, InputError
from fcrs.systems import (
    RewriteSystem,
    bounded_equivalence_check,
    enumerate_irreducibles,
    is_irreducible,
    make_system,
    normalize,
    normalize_with_strategy,
    one_step_reducts,
    parse_presentation,
    serialize_presentation,
    single_step,
    stretch,
)
from fcrs.words import parse_word

NULL3 = make_system("a", [("aaa", "a")])  # third power collapses
AB_SWALLOW = make_system("ab", [("ab", "a"), ("ba", "b")])
COMMUTE = make_system("ab", [("ab", "ba")])


def w(text):
    return parse_word(text)


# --- construction validation ---------------------------------------------

def test_system_rejects_bad_rules():
    with pytest.raises(InputError):
        make_system("a", [("aa", "aa")])  # equal sides
    with pytest.raises(InputError):
        make_system("a", [("", "a")])  # empty lhs
    with pytest.raises(InputError):
        make_system("a", [("ab", "a")])  # b not a letter
    with pytest.raises(InputError):
        make_system("a", [("aa", "a"), ("aa", "a")])  # duplicate
    with pytest.raises(InputError):
        make_system("aa", [])  # duplicate letter


def test_same_lhs_different_rhs_is_legal():
    sys = make_system("abc", [("ab", "a"), ("ab", "c")])
    assert len(sys.rules) == 2


# --- single_step / normalize ----------------------------------------------

def test_single_step_leftmost():
    step = single_step(NULL3, w("a a a a"))
    assert (step.word, step.rule, step.pos) == (w("a a"), 0, 0)
    assert single_step(NULL3, w("a a")) is None


def test_single_step_position_beats_rule_index():
    step = single_step(AB_SWALLOW, w("a b a"))
    assert (step.word, step.rule, step.pos) == (w("a a"), 0, 0)


def test_single_step_rule_index_tie_break():
    sys = make_system("abc", [("ab", "c"), ("ab", "a")])
    step = single_step(sys, w("a b"))
    assert step.rule == 0 and step.word == w("c")


def test_normalize_traces():
    trace = normalize(NULL3, w("a a a a a"))
    assert trace.final == w("a")
    assert len(trace.steps) == 2
    assert trace.steps[0].word == w("a a a")

    trace = normalize(NULL3, w("a a"))
    assert trace.final == w("a a") and trace.steps == ()

    assert normalize(AB_SWALLOW, w("a b"), step_budget=10).final == w("a")


def test_normalize_budget_carries_partial_trace():
    loop = make_system("a", [("a", "aa")])
    with pytest.raises(BudgetExhausted) as exc:
        normalize(loop, w("a"), step_budget=5)
    partial = exc.value.partial
    assert len(partial.steps) == 5
    assert partial.final == ("a",) * 6


def test_trace_is_replayable():
    trace = normalize(AB_SWALLOW, w("b a b a a b"))
    current = trace.start
    for step in trace.steps:
        lhs, rhs = AB_SWALLOW.rules[step.rule]
        assert current[step.pos : step.pos + len(lhs)] == lhs
        current = current[: step.pos] + rhs + current[step.pos + len(lhs) :]
        assert current == step.word
    assert current == trace.final
    assert is_irreducible(AB_SWALLOW, trace.final)


# --- irreducibles ----------------------------------------------------------

def test_is_irreducible():
    assert is_irreducible(NULL3, w("a a"))
    assert not is_irreducible(NULL3, w("a a a"))


def test_enumerate_irreducibles_examples():
    assert enumerate_irreducibles(NULL3, 4) == [w("a"), w("a a")]
    free = make_system("a", [])
    assert enumerate_irreducibles(free, 2) == [w("a"), w("a a")]
    idem = make_system("a", [("aa", "a")])
    assert enumerate_irreducibles(idem, 5) == [w("a")]


def test_enumerate_irreducibles_shortlex_order():
    sys = make_system("ba", [("bb", "b")])  # declared order: b before a
    words = enumerate_irreducibles(sys, 2)
    assert words == [w("b"), w("a"), w("b a"), w("a b"), w("a a")]


def naive_irreducibles(sys, max_len):
    out = []
    for n in range(1, max_len + 1):
        for tup in itertools.product(sys.letters, repeat=n):
            if not any(
                tup[i : i + len(lhs)] == lhs
                for lhs, _ in sys.rules
                for i in range(len(tup))
            ):
                out.append(tup)
    return out


@st.composite
def small_systems(draw):
    letters = draw(st.sampled_from(["a", "ab", "ab"]))
    sides = st.lists(st.sampled_from(letters), min_size=1, max_size=3).map(tuple)
    rules = []
    for _ in range(draw(st.integers(0, 3))):
        lhs, rhs = draw(sides), draw(sides)
        if lhs != rhs and (lhs, rhs) not in rules:
            rules.append((lhs, rhs))
    return RewriteSystem(tuple(letters), tuple(rules))


@given(small_systems())
def test_enumerate_matches_generate_and_filter(sys):
    assert enumerate_irreducibles(sys, 5) == naive_irreducibles(sys, 5)


# --- stretch ---------------------------------------------------------------

def test_stretch_examples():
    assert stretch(NULL3, w("a a a a")) == 4
    assert stretch(NULL3, w("a")) == 1
    assert stretch(COMMUTE, w("a b")) == 2
    assert stretch(NULL3, ()) == 0


def test_stretch_budget():
    loop = make_system("a", [("a", "aa")])
    with pytest.raises(BudgetExhausted):
        stretch(loop, w("a"), budget=50)


TERMINATING = [
    NULL3,
    AB_SWALLOW,
    COMMUTE,
    make_system("eg", [("ee", "e"), ("eg", "g"), ("ge", "g"), ("gg", "e")]),
]


@given(st.integers(0, len(TERMINATING) - 1), st.data())
def test_stretch_properties(which, data):
    sys = TERMINATING[which]
    word = tuple(data.draw(st.lists(st.sampled_from(sys.letters), min_size=1, max_size=6)))
    s = stretch(sys, word)
    assert s >= len(word)
    for step in one_step_reducts(sys, word):
        assert s >= stretch(sys, step.word)
    for i in range(len(word)):
        for j in range(i, len(word) + 1):
            factor = word[i:j]
            if factor != word:
                assert s > stretch(sys, factor)


# --- equivalence and strategy independence ---------------------------------

def test_bounded_equivalence():
    assert bounded_equivalence_check(NULL3, w("a a a a a"), w("a a a"))
    assert not bounded_equivalence_check(NULL3, w("a"), w("a a"))
    assert bounded_equivalence_check(AB_SWALLOW, w("a b"), w("a b"))


COMPLETE = [
    NULL3,
    make_system("ab", [("ab", "a"), ("ba", "a")]),
    make_system("eg", [("ee", "e"), ("eg", "g"), ("ge", "g"), ("gg", "e")]),
    make_system("ab", [("aa", "a"), ("bb", "b"), ("ba", "ab")]),
]


@settings(max_examples=200)
@given(st.integers(0, len(COMPLETE) - 1), st.data(), st.integers(0, 2**32))
def test_complete_systems_are_strategy_independent(which, data, seed):
    sys = COMPLETE[which]
    word = tuple(data.draw(st.lists(st.sampled_from(sys.letters), max_size=6)))
    expected = normalize(sys, word).final
    assert normalize_with_strategy(sys, word, random.Random(seed)) == expected


# --- presentation format ----------------------------------------------------

SAMPLE = """\
# two-letter sample
letters: a b b1
rule: a a a -> a
rule: b b1 -> a
"""


def test_parse_presentation():
    sys = parse_presentation(SAMPLE)
    assert sys.letters == ("a", "b", "b1")
    assert sys.rules == ((("a", "a", "a"), ("a",)), (("b", "b1"), ("a",)))


def test_parse_presentation_errors_carry_line_numbers():
    with pytest.raises(InputError, match=":2:"):
        parse_presentation("letters: a\nrule: a a a\n")
    with pytest.raises(InputError, match=":1:"):
        parse_presentation("rule: a -> b\nletters: a b\n")
    with pytest.raises(InputError, match=":3:"):
        parse_presentation("# hi\nletters: a\nrules: a a -> a\n")
    parse_presentation("letters: a\n")  # no rules is legal
    with pytest.raises(InputError):
        parse_presentation("# only a comment\n")


def test_presentation_round_trip():
    sys = parse_presentation(SAMPLE)
    assert parse_presentation(serialize_presentation(sys)) == sys
