from hypothesis import given, settings
from hypothesis import strategies as st

from fcrs.confluence import (
    COMPLETE,
    NOT_LOCALLY_CONFLUENT,
    UNDECIDED,
    certify,
    check_local_confluence,
    completeness_verdict,
    confluence_records,
    critical_pairs,
    render_confluence_report,
)
from fcrs.orders import length_compare, verify_decrease_on_ball
from fcrs.systems import RewriteSystem, make_system, one_step_reducts
from fcrs.words import parse_word

SWALLOW = make_system("ab", [("ab", "a"), ("ba", "b")])
NULL3 = make_system("a", [("aaa", "a")])


def w(text):
    return parse_word(text)


def test_overlap_pairs_two_rules():
    pairs = critical_pairs(SWALLOW)
    assert [(p.source, p.left_result, p.right_result) for p in pairs] == [
        (w("a b a"), w("a a"), w("a b")),
        (w("b a b"), w("b b"), w("b a")),
    ]
    assert all(p.kind == "overlap" for p in pairs)


def test_self_overlaps():
    sources = [p.source for p in critical_pairs(NULL3)]
    assert sources == [w("a a a a"), w("a a a a a")]


def test_containment_pair():
    sys = make_system("abc", [("ab", "a"), ("b", "c")])
    pairs = [p for p in critical_pairs(sys) if p.kind == "containment"]
    assert len(pairs) == 1
    p = pairs[0]
    assert (p.source, p.left_result, p.right_result) == (w("a b"), w("a"), w("a c"))


def test_identical_lhs_of_distinct_rules_is_an_ambiguity():
    sys = make_system("abc", [("ab", "a"), ("ab", "c")])
    pairs = critical_pairs(sys)
    assert any(p.left_result == w("a") and p.right_result == w("c") for p in pairs)


def test_no_rules_no_pairs():
    report = check_local_confluence(make_system("a", []))
    assert report.outcomes == () and report.all_resolved and not report.incomplete


def test_resolution():
    report = check_local_confluence(NULL3)
    assert report.all_resolved
    bad = check_local_confluence(SWALLOW)
    assert not bad.all_resolved
    finals = {(o.left_final, o.right_final) for o in bad.unresolved}
    assert (w("a a"), w("a")) in finals


def test_undecided_on_budget():
    sys = make_system("ab", [("ab", "a"), ("a", "aa")])
    report = check_local_confluence(sys, step_budget=5)
    assert report.incomplete
    assert any(o.resolved is None for o in report.outcomes)


def test_completeness_verdicts():
    good_evidence = verify_decrease_on_ball(NULL3, length_compare, 4)
    assert completeness_verdict(NULL3, good_evidence, check_local_confluence(NULL3)) == COMPLETE

    swallow_evidence = verify_decrease_on_ball(SWALLOW, length_compare, 4)
    verdict = completeness_verdict(SWALLOW, swallow_evidence, check_local_confluence(SWALLOW))
    assert verdict == NOT_LOCALLY_CONFLUENT

    commute = make_system("ab", [("ab", "ba")])
    weak_evidence = verify_decrease_on_ball(commute, length_compare, 2)
    verdict = completeness_verdict(commute, weak_evidence, check_local_confluence(commute))
    assert verdict == UNDECIDED  # no pairs, but the evidence shows non-decreasing steps


def test_certify_wrapper():
    result = certify(NULL3, length_compare, 4)
    assert result.verdict == COMPLETE
    assert result.evidence.ok and result.report.all_resolved


def test_report_rendering_and_records():
    report = check_local_confluence(SWALLOW)
    text = render_confluence_report(report)
    assert "pair a b a: a a | a b finals a a | a [unresolved]" in text
    assert text.strip().endswith("pairs=2 unresolved=2")
    records = confluence_records(report)
    assert records[0] == {
        "source": "a b a",
        "left": "a a",
        "right": "a b",
        "left_final": "a a",
        "right_final": "a",
        "resolved": False,
        "kind": "overlap",
    }


@st.composite
def small_systems(draw):
    letters = "ab"
    sides = st.lists(st.sampled_from(letters), min_size=1, max_size=3).map(tuple)
    rules = []
    for _ in range(draw(st.integers(1, 3))):
        lhs, rhs = draw(sides), draw(sides)
        if lhs != rhs and (lhs, rhs) not in rules:
            rules.append((lhs, rhs))
    return RewriteSystem(tuple(letters), tuple(rules))


@settings(max_examples=300)
@given(small_systems())
def test_critical_pair_results_replay(sys):
    for p in critical_pairs(sys):
        reducts = {(s.word, s.rule, s.pos) for s in one_step_reducts(sys, p.source)}
        assert (p.left_result, p.left_rule, p.left_pos) in reducts
        assert (p.right_result, p.right_rule, p.right_pos) in reducts
