"""Critical pairs, local confluence, and the completeness verdict.

For finite string rewriting, local confluence reduces to joinability of the
finitely many critical pairs (overlapping or nested left-hand sides), and a
noetherian locally confluent system is confluent.  Termination itself is
only ever certified on a bounded ball by the orders module, so the best
verdict available is "complete-certified-at-scale".
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import BudgetExhausted
from .orders import DecreaseReport, verify_decrease_on_ball
from .systems import DEFAULT_STEP_BUDGET, RewriteSystem, normalize
from .words import Word, format_word

COMPLETE = "complete-certified-at-scale"
NOT_LOCALLY_CONFLUENT = "not-locally-confluent"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class CriticalPair:
    source: Word
    left_result: Word
    right_result: Word
    left_rule: int
    left_pos: int
    right_rule: int
    right_pos: int
    kind: str  # "overlap" or "containment"


@dataclass(frozen=True)
class PairOutcome:
    pair: CriticalPair
    resolved: bool | None  # None when a normalization budget ran out
    left_final: Word | None
    right_final: Word | None


@dataclass(frozen=True)
class ConfluenceReport:
    outcomes: tuple[PairOutcome, ...]
    incomplete: bool  # some pair was left undecided

    @property
    def unresolved(self) -> tuple[PairOutcome, ...]:
        return tuple(o for o in self.outcomes if o.resolved is False)

    @property
    def all_resolved(self) -> bool:
        return all(o.resolved for o in self.outcomes)


def _apply(rule: tuple[Word, Word], word: Word, pos: int) -> Word:
    lhs, rhs = rule
    return word[:pos] + rhs + word[pos + len(lhs):]


def critical_pairs(sys: RewriteSystem) -> list[CriticalPair]:
    """All overlap and containment ambiguities between rule left sides.

    Overlaps pair every ordered rule combination, a rule with itself
    included; the offset-zero self-overlap is skipped since both reductions
    coincide.  Containments cover one lhs sitting inside another (identical
    left sides of distinct rules count, at offset zero).
    """
    pairs: list[CriticalPair] = []
    rules = sys.rules
    for i1, (lhs1, _) in enumerate(rules):
        for i2, (lhs2, _) in enumerate(rules):
            for offset in range(1, len(lhs1)):
                tail = len(lhs1) - offset
                if tail >= len(lhs2):
                    continue
                if lhs1[offset:] != lhs2[:tail]:
                    continue
                source = lhs1 + lhs2[tail:]
                pairs.append(CriticalPair(
                    source,
                    _apply(rules[i1], source, 0),
                    _apply(rules[i2], source, offset),
                    i1, 0, i2, offset,
                    "overlap",
                ))
            if i1 == i2:
                continue
            for pos in range(len(lhs1) - len(lhs2) + 1):
                if lhs1[pos:pos + len(lhs2)] != lhs2:
                    continue
                pairs.append(CriticalPair(
                    lhs1,
                    _apply(rules[i1], lhs1, 0),
                    _apply(rules[i2], lhs1, pos),
                    i1, 0, i2, pos,
                    "containment",
                ))
    pairs.sort(key=lambda p: (p.source, p.left_rule, p.right_rule, p.right_pos, p.kind))
    return pairs


def check_local_confluence(sys: RewriteSystem,
                           step_budget: int = DEFAULT_STEP_BUDGET) -> ConfluenceReport:
    """Normalize both sides of every critical pair and compare the finals.

    A pair whose normalization exhausts the budget is marked undecided and
    the whole report incomplete, rather than failing the run.
    """
    outcomes: list[PairOutcome] = []
    incomplete = False
    for pair in critical_pairs(sys):
        try:
            left = normalize(sys, pair.left_result, step_budget).final
            right = normalize(sys, pair.right_result, step_budget).final
        except BudgetExhausted:
            outcomes.append(PairOutcome(pair, None, None, None))
            incomplete = True
            continue
        outcomes.append(PairOutcome(pair, left == right, left, right))
    return ConfluenceReport(tuple(outcomes), incomplete)


def completeness_verdict(sys: RewriteSystem, termination_evidence: DecreaseReport,
                         report: ConfluenceReport) -> str:
    """Combine ball-scale termination evidence with the critical-pair report.

    Newman's lemma is the justification: noetherian (here: certified on the
    ball, no violations, nothing truncated) plus locally confluent gives
    completeness.  A genuinely unjoinable pair refutes local confluence
    outright; anything less leaves the verdict undecided.
    """
    if termination_evidence.ok and not report.incomplete and report.all_resolved:
        return COMPLETE
    if report.unresolved:
        return NOT_LOCALLY_CONFLUENT
    return UNDECIDED


@dataclass(frozen=True)
class CertificationResult:
    verdict: str
    evidence: DecreaseReport
    report: ConfluenceReport


def certify(sys: RewriteSystem, comparator, ball_len: int,
            max_explore: int = 1_000_000,
            step_budget: int = DEFAULT_STEP_BUDGET) -> CertificationResult:
    """One-call wrapper: ball verification, critical pairs, verdict."""
    evidence = verify_decrease_on_ball(sys, comparator, ball_len, max_explore)
    report = check_local_confluence(sys, step_budget)
    return CertificationResult(completeness_verdict(sys, evidence, report), evidence, report)


def _outcome_status(outcome: PairOutcome) -> str:
    if outcome.resolved is None:
        return "undecided"
    return "resolved" if outcome.resolved else "unresolved"


def render_confluence_report(report: ConfluenceReport) -> str:
    lines = []
    for o in report.outcomes:
        p = o.pair
        finals = ""
        if o.resolved is not None:
            finals = f" finals {format_word(o.left_final)} | {format_word(o.right_final)}"
        lines.append(
            f"pair {format_word(p.source)}: {format_word(p.left_result)} | "
            f"{format_word(p.right_result)}{finals} [{_outcome_status(o)}]"
        )
    lines.append(f"pairs={len(report.outcomes)} unresolved={len(report.unresolved)}"
                 + (" incomplete" if report.incomplete else ""))
    return "\n".join(lines) + "\n"


def confluence_records(report: ConfluenceReport) -> list[dict]:
    """One JSON-ready record per critical pair."""
    records = []
    for o in report.outcomes:
        p = o.pair
        records.append({
            "source": format_word(p.source),
            "left": format_word(p.left_result),
            "right": format_word(p.right_result),
            "left_final": None if o.left_final is None else format_word(o.left_final),
            "right_final": None if o.right_final is None else format_word(o.right_final),
            "resolved": o.resolved,
            "kind": p.kind,
        })
    return records


def render_confluence_jsonl(report: ConfluenceReport) -> str:
    return "".join(json.dumps(rec) + "\n" for rec in confluence_records(report))
