"""Rewriting systems over token alphabets: reduction, normal forms, stretch.

A system is an alphabet plus an ordered rule list.  Reduction uses a fixed
strategy (leftmost position, then lowest rule index) so traces are
deterministic; for complete systems the resulting normal form is
strategy-independent and that is property-tested rather than assumed.

The module also owns the presentation text format::

    # comment
    letters: a b b1 c1 0
    rule: a a a -> a
    rule: 0 a -> 0

The ``letters:`` line comes first, rules follow, tokens are whitespace
separated and ``->`` is mandatory in each rule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExhausted, InputError
from .words import Word, format_word, splice, validate_token

Rule = tuple[Word, Word]

DEFAULT_STEP_BUDGET = 10_000
DEFAULT_EXPLORE_BUDGET = 100_000


@dataclass(frozen=True)
class RewriteSystem:
    letters: tuple[str, ...]
    rules: tuple[Rule, ...]

    def __post_init__(self):
        if not self.letters:
            raise InputError("a system needs at least one letter")
        seen = set()
        for tok in self.letters:
            validate_token(tok)
            if tok == "->":
                raise InputError("'->' cannot be a letter token")
            if tok in seen:
                raise InputError(f"duplicate letter {tok!r}")
            seen.add(tok)
        rule_set = set()
        for lhs, rhs in self.rules:
            if not lhs or not rhs:
                raise InputError("rule sides must be non-empty words")
            for tok in lhs + rhs:
                if tok not in seen:
                    raise InputError(f"rule {format_word(lhs)} -> {format_word(rhs)} uses letter {tok!r} outside the alphabet")
            if lhs == rhs:
                raise InputError(f"rule with equal sides: {format_word(lhs)} -> {format_word(rhs)}")
            if (lhs, rhs) in rule_set:
                raise InputError(f"duplicate rule {format_word(lhs)} -> {format_word(rhs)}")
            rule_set.add((lhs, rhs))

    def __hash__(self):
        # Same value the generated hash would produce, memoized: systems key
        # several per-word caches, and rehashing every rule on each lookup
        # dominates tight sweeps.
        memo = self.__dict__.get("_hash")
        if memo is None:
            memo = hash((self.letters, self.rules))
            object.__setattr__(self, "_hash", memo)
        return memo

    def check_word(self, w: Word) -> Word:
        for tok in w:
            if tok not in self.letter_set:
                raise InputError(f"letter {tok!r} is not in the alphabet {{{' '.join(self.letters)}}}")
        return w

    @property
    def letter_set(self) -> frozenset[str]:
        return _letter_set(self)


def make_system(letters, rules) -> RewriteSystem:
    """Build a RewriteSystem from any iterables (convenience constructor)."""
    return RewriteSystem(tuple(letters), tuple((tuple(l), tuple(r)) for l, r in rules))


@lru_cache(maxsize=None)
def _letter_set(sys: RewriteSystem) -> frozenset[str]:
    return frozenset(sys.letters)


@lru_cache(maxsize=None)
def _rules_by_first_letter(sys: RewriteSystem) -> dict[str, tuple[tuple[int, Word, Word], ...]]:
    by_first: dict[str, list] = {}
    for idx, (lhs, rhs) in enumerate(sys.rules):
        by_first.setdefault(lhs[0], []).append((idx, lhs, rhs))
    return {tok: tuple(entries) for tok, entries in by_first.items()}


@lru_cache(maxsize=None)
def _lhs_by_last_letter(sys: RewriteSystem) -> dict[str, tuple[Word, ...]]:
    by_last: dict[str, list] = {}
    for lhs, _ in sys.rules:
        by_last.setdefault(lhs[-1], []).append(lhs)
    return {tok: tuple(entries) for tok, entries in by_last.items()}


@dataclass(frozen=True)
class Step:
    """One reduction step: the resulting word plus which rule fired where."""

    word: Word
    rule: int
    pos: int


@dataclass(frozen=True)
class ReductionTrace:
    start: Word
    steps: tuple[Step, ...]
    final: Word


def matches_at(sys: RewriteSystem, w: Word, pos: int):
    """Rules whose lhs occurs in w at pos, as (index, lhs, rhs), index order."""
    out = []
    for idx, lhs, rhs in _rules_by_first_letter(sys).get(w[pos], ()):
        if w[pos:pos + len(lhs)] == lhs:
            out.append((idx, lhs, rhs))
    return out


def _strategy_step(buckets, w: Word) -> Step | None:
    """The strategy redex against prefetched first-letter buckets.  Buckets
    hold rules in index order, so the first match is the lowest index."""
    for pos, tok in enumerate(w):
        for idx, lhs, rhs in buckets.get(tok, ()):
            if w[pos:pos + len(lhs)] == lhs:
                return Step(splice(w, pos, len(lhs), rhs), idx, pos)
    return None


def single_step(sys: RewriteSystem, w: Word) -> Step | None:
    """Apply the strategy redex (leftmost position, lowest rule index)."""
    sys.check_word(w)
    return _strategy_step(_rules_by_first_letter(sys), w)


def _reducts_with(buckets, w: Word) -> list[Step]:
    """one_step_reducts against prefetched buckets, skipping the per-call
    cache lookup (which hashes the whole system) in tight sweeps."""
    out = []
    for pos, tok in enumerate(w):
        for idx, lhs, rhs in buckets.get(tok, ()):
            if w[pos:pos + len(lhs)] == lhs:
                out.append(Step(splice(w, pos, len(lhs), rhs), idx, pos))
    return out


def one_step_reducts(sys: RewriteSystem, w: Word) -> list[Step]:
    """Every single-step reduct of w (all positions, all rules), in
    (position, rule index) order."""
    return _reducts_with(_rules_by_first_letter(sys), w)


def is_irreducible(sys: RewriteSystem, w: Word) -> bool:
    return all(not matches_at(sys, w, pos) for pos in range(len(w)))


def normalize(sys: RewriteSystem, w: Word, step_budget: int = DEFAULT_STEP_BUDGET) -> ReductionTrace:
    """Reduce w to a normal form, recording every step.

    Raises BudgetExhausted (non-termination suspected) when the budget runs
    out; the partial trace so far rides along on the error, its ``final``
    being merely the last word reached.
    """
    if step_budget <= 0:
        raise InputError("step budget must be positive")
    sys.check_word(w)
    buckets = _rules_by_first_letter(sys)
    steps: list[Step] = []
    current = w
    while True:
        nxt = _strategy_step(buckets, current)
        if nxt is None:
            return ReductionTrace(w, tuple(steps), current)
        if len(steps) >= step_budget:
            raise BudgetExhausted(
                f"no normal form of {format_word(w)} within {step_budget} steps (non-termination suspected)",
                partial=ReductionTrace(w, tuple(steps), current),
            )
        steps.append(nxt)
        current = nxt.word


def normalize_with_strategy(sys: RewriteSystem, w: Word, rng: random.Random,
                            step_budget: int = DEFAULT_STEP_BUDGET) -> Word:
    """Normalize picking a random redex at each step (for strategy-independence
    tests on complete systems)."""
    current = w
    for _ in range(step_budget):
        choices = one_step_reducts(sys, current)
        if not choices:
            return current
        current = rng.choice(choices).word
    raise BudgetExhausted(f"no normal form of {format_word(w)} within {step_budget} randomized steps")


def enumerate_irreducibles(sys: RewriteSystem, max_len: int) -> list[Word]:
    """All irreducible words of length <= max_len in shortlex order (declared
    letter order), by prefix-tree search.

    An irreducible word stays irreducible under extension unless the new last
    letter completes a rule lhs as a suffix, so each tree level only needs a
    suffix check against the previous level.
    """
    if max_len < 1:
        raise InputError("max_len must be at least 1")
    by_last = _lhs_by_last_letter(sys)

    def extension_ok(w: Word) -> bool:
        last = w[-1]
        return all(w[-len(lhs):] != lhs for lhs in by_last.get(last, ()))

    out: list[Word] = []
    level: list[Word] = [(x,) for x in sys.letters if extension_ok((x,))]
    for _ in range(max_len):
        out.extend(level)
        level = [w + (x,) for w in level for x in sys.letters if extension_ok(w + (x,))]
        if not level:
            break
    return out


@lru_cache(maxsize=None)
def _descendant_closure(sys: RewriteSystem, w: Word, budget: int) -> frozenset[Word]:
    buckets = _rules_by_first_letter(sys)
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for u in frontier:
            for step in _reducts_with(buckets, u):
                v = step.word
                if v not in seen:
                    if len(seen) >= budget:
                        raise BudgetExhausted(
                            f"descendants of {format_word(w)} exceed {budget} distinct words (non-termination suspected)")
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return frozenset(seen)


@lru_cache(maxsize=None)
def _stretch_value(sys: RewriteSystem, w: Word, budget: int) -> int:
    return max(len(u) for u in _descendant_closure(sys, w, budget))


def stretch(sys: RewriteSystem, w: Word, budget: int = DEFAULT_EXPLORE_BUDGET) -> int:
    """Maximum length over all descendants of w, w itself included.

    Explores every redex, not just the strategy's choice.  The empty word has
    stretch 0 by convention (it appears as an empty decomposition segment).
    """
    if not w:
        return 0
    sys.check_word(w)
    return _stretch_value(sys, w, budget)


def bounded_equivalence_check(sys: RewriteSystem, u: Word, v: Word,
                              step_budget: int = DEFAULT_STEP_BUDGET) -> bool:
    """Whether u and v have the same normal form.

    Decides the congruence only when the system is complete; on non-complete
    systems the answer is advisory.
    """
    return normalize(sys, u, step_budget).final == normalize(sys, v, step_budget).final


# ---------------------------------------------------------------------------
# presentation text format

def parse_presentation(text: str, source: str = "<string>") -> RewriteSystem:
    letters: tuple[str, ...] | None = None
    rules: list[Rule] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("letters:"):
            if letters is not None:
                raise InputError(f"{source}:{lineno}: duplicate letters: line")
            letters = tuple(line[len("letters:"):].split())
            if not letters:
                raise InputError(f"{source}:{lineno}: empty alphabet")
        elif line.startswith("rule:"):
            if letters is None:
                raise InputError(f"{source}:{lineno}: rule before the letters: line")
            tokens = line[len("rule:"):].split()
            if tokens.count("->") != 1:
                raise InputError(f"{source}:{lineno}: a rule needs exactly one '->'")
            arrow = tokens.index("->")
            lhs, rhs = tuple(tokens[:arrow]), tuple(tokens[arrow + 1:])
            if not lhs or not rhs:
                raise InputError(f"{source}:{lineno}: rule sides must be non-empty")
            rules.append((lhs, rhs))
        else:
            raise InputError(f"{source}:{lineno}: expected 'letters:' or 'rule:', got {line!r}")
    if letters is None:
        raise InputError(f"{source}: no letters: line")
    try:
        return RewriteSystem(letters, tuple(rules))
    except InputError as exc:
        raise InputError(f"{source}: {exc}") from exc


def parse_presentation_file(path) -> RewriteSystem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read presentation file {path}: {exc}") from exc
    return parse_presentation(text, source=str(path))


def serialize_presentation(sys: RewriteSystem) -> str:
    lines = [f"letters: {' '.join(sys.letters)}"]
    lines.extend(f"rule: {format_word(l)} -> {format_word(r)}" for l, r in sys.rules)
    return "\n".join(lines) + "\n"
