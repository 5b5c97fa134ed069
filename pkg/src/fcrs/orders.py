"""Well-founded orders used to certify that constructed systems terminate.

Three comparators live here: the multiset order on naturals, the order for
ideal-extension systems (words over a "small" alphabet A interleaved with
blocks over a second alphabet), and the order for Rees-matrix systems (words
over A interleaved with single sandwich letters).  Each comparator returns an
OrderVerdict rather than a bare boolean so that ball verification can report
WHY a pair failed.

``verify_decrease_on_ball`` is the desk-scale certificate: enumerate every
word up to a length bound, apply every rule at every position, and demand
the comparator says "decreases" for each step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import groupby, product

from .errors import InputError
from .systems import (
    DEFAULT_EXPLORE_BUDGET,
    RewriteSystem,
    _reducts_with,
    _rules_by_first_letter,
    _stretch_value,
    normalize,
    one_step_reducts,
    stretch,
)
from .words import Word, format_word, length_in

DECREASES = "decreases"
EQUAL = "equal"
INCREASES = "increases"
INCOMPARABLE = "incomparable"


def multiset_greater(m, n) -> bool:
    """Strict multiset order on naturals: m > n iff n arises from m by
    replacing elements with finitely many strictly smaller ones.

    Over a total order this is the same as comparing the descending sorts
    lexicographically, a missing entry reading as bottom: whichever side
    wins at the first difference holds the larger unmatched element.
    """
    dm, dn = sorted(m, reverse=True), sorted(n, reverse=True)
    for x, y in zip(dm, dn):
        if x != y:
            return x > y
    return len(dm) > len(dn)


def _fmt_multiset(entries) -> str:
    return "[" + ", ".join(str(x) for x in sorted(entries, reverse=True)) + "]"


@dataclass(frozen=True)
class OrderVerdict:
    relation: str  # decreases | equal | increases | incomparable
    witness: str   # which clause decided, with the numbers that decided it


@dataclass(frozen=True)
class SegmentDecomposition:
    """w = u_n v_n ... u_1 v_1 u_0 with blocks v_j and segments u_j.

    ``a_segments[j]`` is u_j (j = 0 is rightmost, possibly empty words at
    the ends), ``b_segments[j]`` is v_{j+1}.  Middle segments are non-empty
    when blocks are maximal runs, and may be empty in single-letter mode.
    """

    a_segments: tuple[Word, ...]
    b_segments: tuple[Word, ...]

    def recombine(self) -> Word:
        out: list[str] = []
        n = len(self.b_segments)
        for j in range(n, 0, -1):
            out.extend(self.a_segments[j])
            out.extend(self.b_segments[j - 1])
        out.extend(self.a_segments[0])
        return tuple(out)


def decompose_blocks(w: Word, block_letters) -> SegmentDecomposition:
    """Split w at its maximal runs of block letters."""
    special = frozenset(block_letters)
    a_right_to_left: list[Word] = []
    b_right_to_left: list[Word] = []
    runs = [(is_b, tuple(run)) for is_b, run in groupby(w, key=lambda t: t in special)]
    if not runs or runs[-1][0]:
        runs.append((False, ()))
    if runs[0][0]:
        runs.insert(0, (False, ()))
    for is_b, run in reversed(runs):
        if is_b:
            b_right_to_left.append(run)
        else:
            a_right_to_left.append(run)
    return SegmentDecomposition(tuple(a_right_to_left), tuple(b_right_to_left))


def decompose_single(w: Word, special_letters) -> SegmentDecomposition:
    """Split w at every individual occurrence of a special letter."""
    special = frozenset(special_letters)
    a_left_to_right: list[list[str]] = [[]]
    b_left_to_right: list[Word] = []
    for tok in w:
        if tok in special:
            b_left_to_right.append((tok,))
            a_left_to_right.append([])
        else:
            a_left_to_right[-1].append(tok)
    return SegmentDecomposition(
        tuple(tuple(seg) for seg in reversed(a_left_to_right)),
        tuple(reversed(b_left_to_right)),
    )


# ---------------------------------------------------------------------------
# ideal-extension order

@dataclass(frozen=True)
class IdealExtensionOrderContext:
    """What the ideal-extension comparator needs to know.

    ``a_letters`` name the small alphabet A with its rewriting system
    ``r_system``; ``u_system`` is the complete system of the extending
    semigroup, used to compute stretches of blocks.  When that semigroup has
    a zero, ``u_zero`` names its letter: letters equal to the zero are
    banned from compared words, and rules collapsing to the zero are
    excluded from the block-step clause.
    """

    a_letters: tuple[str, ...]
    r_system: RewriteSystem
    u_system: RewriteSystem
    u_zero: str | None = None
    stretch_budget: int = field(default=DEFAULT_EXPLORE_BUDGET)

    def __post_init__(self):
        if set(self.r_system.letters) != set(self.a_letters):
            raise InputError("r_system alphabet must equal a_letters")
        if set(self.a_letters) & set(self.u_system.letters):
            raise InputError("a_letters must be disjoint from the u_system alphabet")
        if self.u_zero is not None and self.u_zero not in self.u_system.letters:
            raise InputError(f"u_zero {self.u_zero!r} is not a u_system letter")

    def compare(self, w: Word, w_prime: Word) -> OrderVerdict:
        return ideal_extension_compare(self, w, w_prime)


@lru_cache(maxsize=None)
def _zero_class_letters(ctx: IdealExtensionOrderContext) -> frozenset[str]:
    if ctx.u_zero is None:
        return frozenset()
    zero_word = (ctx.u_zero,)
    return frozenset(
        b for b in ctx.u_system.letters
        if normalize(ctx.u_system, (b,)).final == zero_word
    )


@lru_cache(maxsize=None)
def _nonzero_u_system(ctx: IdealExtensionOrderContext) -> RewriteSystem:
    if ctx.u_zero is None:
        return ctx.u_system
    zero_word = (ctx.u_zero,)
    kept = tuple(
        (lhs, rhs) for lhs, rhs in ctx.u_system.rules
        if normalize(ctx.u_system, lhs).final != zero_word
    )
    return RewriteSystem(ctx.u_system.letters, kept)


def _one_step_between(sys: RewriteSystem, frm: Word, to: Word) -> bool:
    return any(step.word == to for step in one_step_reducts(sys, frm))


def ideal_extension_compare(ctx: IdealExtensionOrderContext, w: Word, w_prime: Word) -> OrderVerdict:
    """Verdict on w vs w': "decreases" means w sits strictly below w'.

    Clause (i): stretch multisets of the block runs, under the extending
    system.  Clause (ii): equal multisets, first differing block (rightmost
    first) moved by one non-zero block-system step.  Clause (iii): identical
    blocks, first differing A-segment moved by one A-system step.
    """
    banned = _zero_class_letters(ctx)
    allowed = (set(ctx.a_letters) | set(ctx.u_system.letters)) - banned
    for word in (w, w_prime):
        for tok in word:
            if tok not in allowed:
                raise InputError(f"letter {tok!r} not allowed in ideal-extension comparison")
    if w == w_prime:
        return OrderVerdict(EQUAL, "identical words")

    blocks = frozenset(ctx.u_system.letters) - banned
    d = decompose_blocks(w, blocks)
    dp = decompose_blocks(w_prime, blocks)
    st = [stretch(ctx.u_system, v, ctx.stretch_budget) for v in d.b_segments]
    st_p = [stretch(ctx.u_system, v, ctx.stretch_budget) for v in dp.b_segments]
    if multiset_greater(st_p, st):
        return OrderVerdict(DECREASES, f"(i) block stretches {_fmt_multiset(st_p)} > {_fmt_multiset(st)}")
    if multiset_greater(st, st_p):
        return OrderVerdict(INCREASES, f"(i) block stretches {_fmt_multiset(st)} > {_fmt_multiset(st_p)}")

    # equal stretch multisets force equal block counts
    for j, (v, v_p) in enumerate(zip(d.b_segments, dp.b_segments)):
        if v == v_p:
            continue
        active = _nonzero_u_system(ctx)
        if _one_step_between(active, v_p, v):
            return OrderVerdict(DECREASES, f"(ii) block {j + 1} stepped {format_word(v_p)} -> {format_word(v)}")
        if _one_step_between(active, v, v_p):
            return OrderVerdict(INCREASES, f"(ii) block {j + 1} stepped {format_word(v)} -> {format_word(v_p)}")
        return OrderVerdict(INCOMPARABLE, f"(ii) blocks {j + 1} differ with no single step between them")

    # identical blocks force aligned A-segments
    for j, (u, u_p) in enumerate(zip(d.a_segments, dp.a_segments)):
        if u == u_p:
            continue
        if _one_step_between(ctx.r_system, u_p, u):
            return OrderVerdict(DECREASES, f"(iii) segment {j} stepped {format_word(u_p)} -> {format_word(u)}")
        if _one_step_between(ctx.r_system, u, u_p):
            return OrderVerdict(INCREASES, f"(iii) segment {j} stepped {format_word(u)} -> {format_word(u_p)}")
        return OrderVerdict(INCOMPARABLE, f"(iii) segments {j} differ with no single step between them")
    raise AssertionError("distinct words with identical decompositions")


# ---------------------------------------------------------------------------
# Rees-system order

@dataclass(frozen=True)
class ReesOrderContext:
    """What the Rees comparator needs: the group-part alphabet A with its
    system, the row/column letters, and the zero letter when present."""

    a_letters: tuple[str, ...]
    r_system: RewriteSystem
    bc_letters: tuple[str, ...]
    zero_letter: str | None = None
    stretch_budget: int = field(default=DEFAULT_EXPLORE_BUDGET)

    def __post_init__(self):
        if set(self.r_system.letters) != set(self.a_letters):
            raise InputError("r_system alphabet must equal a_letters")
        overlap = set(self.a_letters) & set(self.bc_letters)
        if overlap:
            raise InputError(f"a_letters and bc_letters overlap: {sorted(overlap)}")
        if self.zero_letter in set(self.a_letters) | set(self.bc_letters):
            raise InputError("the zero letter cannot be reused by another alphabet")

    def compare(self, w: Word, w_prime: Word) -> OrderVerdict:
        return rees_compare(self, w, w_prime)


@lru_cache(maxsize=None)
def _rees_letter_sets(ctx: ReesOrderContext):
    """(bc, special, allowed) frozensets for a context, computed once."""
    bc = frozenset(ctx.bc_letters)
    special = bc | ({ctx.zero_letter} if ctx.zero_letter else frozenset())
    return bc, special, frozenset(ctx.a_letters) | special


def rees_compare(ctx: ReesOrderContext, w: Word, w_prime: Word) -> OrderVerdict:
    """Verdict on w vs w' for a Rees-matrix system, "decreases" = w below w'.

    Clauses, tried in order: (i) count of row/column letters; (ii) count of
    zero letters; (iii) stretch multisets over ALL group-part segments
    (empty segments count 0); (iv) first differing segment (rightmost
    first) moved by one group-part step.
    """
    bc, special, allowed = _rees_letter_sets(ctx)
    for word in (w, w_prime):
        for tok in word:
            if tok not in allowed:
                raise InputError(f"letter {tok!r} not allowed in Rees comparison")
    if w == w_prime:
        return OrderVerdict(EQUAL, "identical words")

    n_bc, n_bc_p = length_in(w, bc), length_in(w_prime, bc)
    if n_bc_p > n_bc:
        return OrderVerdict(DECREASES, f"(i) row/column letters {n_bc_p} > {n_bc}")
    if n_bc > n_bc_p:
        return OrderVerdict(INCREASES, f"(i) row/column letters {n_bc} > {n_bc_p}")

    if ctx.zero_letter is not None:
        zeros = frozenset((ctx.zero_letter,))
        n_z, n_z_p = length_in(w, zeros), length_in(w_prime, zeros)
        if n_z_p > n_z:
            return OrderVerdict(DECREASES, f"(ii) zero letters {n_z_p} > {n_z}")
        if n_z > n_z_p:
            return OrderVerdict(INCREASES, f"(ii) zero letters {n_z} > {n_z_p}")

    d = decompose_single(w, special)
    dp = decompose_single(w_prime, special)
    # segments were vetted by the allowed-letter pass, so skip re-validation
    st = [_stretch_value(ctx.r_system, x, ctx.stretch_budget) if x else 0
          for x in d.a_segments]
    st_p = [_stretch_value(ctx.r_system, x, ctx.stretch_budget) if x else 0
            for x in dp.a_segments]
    nonzero = lambda entries: [x for x in entries if x]
    if multiset_greater(st_p, st):
        return OrderVerdict(DECREASES, f"(iii) segment stretches {_fmt_multiset(nonzero(st_p))} > {_fmt_multiset(nonzero(st))}")
    if multiset_greater(st, st_p):
        return OrderVerdict(INCREASES, f"(iii) segment stretches {_fmt_multiset(nonzero(st))} > {_fmt_multiset(nonzero(st_p))}")

    # equal letter counts align the segment lists
    for j, (x, x_p) in enumerate(zip(d.a_segments, dp.a_segments)):
        if x == x_p:
            continue
        if _one_step_between(ctx.r_system, x_p, x):
            return OrderVerdict(DECREASES, f"(iv) segment {j} stepped {format_word(x_p)} -> {format_word(x)}")
        if _one_step_between(ctx.r_system, x, x_p):
            return OrderVerdict(INCREASES, f"(iv) segment {j} stepped {format_word(x)} -> {format_word(x_p)}")
        return OrderVerdict(INCOMPARABLE, f"(iv) segments {j} differ with no single step between them")
    return OrderVerdict(INCOMPARABLE, "(iv) segments identical but row/column letters differ")


# ---------------------------------------------------------------------------
# plain length order and ball verification

def length_compare(w: Word, w_prime: Word) -> OrderVerdict:
    if len(w) < len(w_prime):
        return OrderVerdict(DECREASES, f"length {len(w)} < {len(w_prime)}")
    if len(w) > len(w_prime):
        return OrderVerdict(INCREASES, f"length {len(w)} > {len(w_prime)}")
    return OrderVerdict(EQUAL, "same length")


@dataclass(frozen=True)
class DecreaseViolation:
    source: Word   # the word reduced from
    target: Word   # its one-step reduct
    rule: int
    pos: int
    verdict: OrderVerdict


@dataclass(frozen=True)
class DecreaseReport:
    max_len: int
    checked: int
    violations: tuple[DecreaseViolation, ...]
    truncated: bool

    @property
    def ok(self) -> bool:
        return not self.violations and not self.truncated


def verify_decrease_on_ball(sys: RewriteSystem, comparator, max_len: int,
                            max_explore: int = 1_000_000) -> DecreaseReport:
    """Check that every single-step reduction among words of length <= max_len
    strictly decreases under the comparator.

    Every redex of every word is tried, not just the strategy's pick.  The
    enumeration is deterministic (shortlex words, then position, then rule
    index), so reports are reproducible; exceeding max_explore truncates the
    report rather than erroring.
    """
    if max_len < 1:
        raise InputError("max_len must be at least 1")
    violations: list[DecreaseViolation] = []
    buckets = _rules_by_first_letter(sys)
    checked = 0
    spent = 0
    truncated = False
    for n in range(1, max_len + 1):
        for tup in product(sys.letters, repeat=n):
            spent += 1
            for step in _reducts_with(buckets, tup):
                verdict = comparator(step.word, tup)
                checked += 1
                spent += 1
                if verdict.relation != DECREASES:
                    violations.append(DecreaseViolation(tup, step.word, step.rule, step.pos, verdict))
            if spent >= max_explore:
                truncated = True
                break
        if truncated:
            break
    return DecreaseReport(max_len, checked, tuple(violations), truncated)


def render_decrease_report(report: DecreaseReport) -> str:
    lines = [
        f"VIOLATION {format_word(v.source)} -> {format_word(v.target)} "
        f"rule={v.rule} pos={v.pos} verdict={v.verdict.relation}"
        for v in report.violations
    ]
    if report.truncated:
        lines.append("TRUNCATED")
    lines.append(f"checked={report.checked} violations={len(report.violations)}")
    return "\n".join(lines) + "\n"
