"""Presentation constructions: zero adjunction, ideal extensions, Rees matrix
presentations, and the recursive pipeline that turns any finite regular
semigroup into a complete rewriting system with a normal-form witness for
every element.

Each construction returns a :class:`ConstructionOutput` carrying the system,
the witness map, a certificate naming the termination order that applies,
and a provenance line.  Outputs serialize to a line-based text document and
can be re-verified from that form alone.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .confluence import COMPLETE, CertificationResult, certify
from .errors import ConstructionError, InputError
from .orders import IdealExtensionOrderContext, ReesOrderContext, length_compare
from .systems import (
    DEFAULT_STEP_BUDGET,
    RewriteSystem,
    enumerate_irreducibles,
    is_irreducible,
    normalize,
    serialize_presentation,
)
from .tables import (
    FiniteSemigroup,
    GroupFcrs,
    ReesDatum,
    cayley_fcrs,
    coordinatize,
    find_identity,
    green_classes,
    is_regular,
    make_rees_datum,
    maximal_subgroup,
    principal_factor,
    serialize_cayley,
    verify_group_fcrs,
)
from .words import Word, format_word, parse_word

ZERO_LETTER = "0"
ZERO_WORD: Word = (ZERO_LETTER,)

CERT_LENGTH = "length"
CERT_IDEAL_EXTENSION = "ideal-extension"
CERT_REES = "rees"


@dataclass(frozen=True)
class CertificateSpec:
    """Names the termination order certifying a constructed system, with the
    context needed to rebuild the comparator from a serialized output.

    The group-part system is not stored: it is recovered from the output as
    the rules whose both sides stay inside ``a_letters``.
    """

    kind: str
    a_letters: tuple[str, ...] = ()
    u_system: RewriteSystem | None = None       # ideal-extension only
    u_zero: str | None = None                   # ideal-extension only
    bc_letters: tuple[str, ...] = ()            # rees only
    zero_letter: str | None = None              # rees only

    def comparator(self, system: RewriteSystem):
        """The (reduct, source) -> OrderVerdict function for this certificate."""
        if self.kind == CERT_LENGTH:
            return length_compare
        if self.kind not in (CERT_IDEAL_EXTENSION, CERT_REES):
            raise InputError(f"unknown certificate kind {self.kind!r}")
        a_set = set(self.a_letters)
        pure = tuple(r for r in system.rules
                     if all(t in a_set for t in r[0] + r[1]))
        r_system = RewriteSystem(self.a_letters, pure)
        if self.kind == CERT_IDEAL_EXTENSION:
            if self.u_system is None:
                raise InputError("ideal-extension certificate lacks its extending system")
            ctx = IdealExtensionOrderContext(self.a_letters, r_system,
                                             self.u_system, self.u_zero)
            return ctx.compare
        ctx = ReesOrderContext(self.a_letters, r_system,
                               self.bc_letters, self.zero_letter)
        return ctx.compare


@dataclass(frozen=True)
class ConstructionOutput:
    system: RewriteSystem
    witness: tuple[tuple[str, Word], ...]   # (element name, word), sorted by name
    certificate: CertificateSpec
    provenance: str

    @property
    def witness_map(self) -> dict[str, Word]:
        return dict(self.witness)


def _digest(*parts: str) -> str:
    return hashlib.sha256("\x1f".join(parts).encode("utf-8")).hexdigest()[:12]


def _freeze_witness(mapping) -> tuple[tuple[str, Word], ...]:
    return tuple(sorted((str(k), tuple(w)) for k, w in mapping.items()))


def _check_witness(system: RewriteSystem, witness, *, bug: bool) -> None:
    """Witness words must be irreducible and pairwise distinct.  ``bug``
    selects ConstructionError (self-check of our own output) over InputError
    (caller-supplied words)."""
    err = ConstructionError if bug else InputError
    seen: dict[Word, str] = {}
    for name, word in witness:
        if not is_irreducible(system, word):
            raise err(f"witness word for {name} is reducible: {format_word(word)}")
        if word in seen:
            raise err(f"witness words for {seen[word]} and {name} coincide")
        seen[word] = name


# ---------------------------------------------------------------------------
# zero adjunction

def adjoin_zero(sys: RewriteSystem, z, oracle_words=None) -> ConstructionOutput:
    """Extend a complete system with a fresh letter 0 that the designated
    zero word collapses to, plus the absorption rules.

    ``z`` must be the irreducible word representing the zero.  When
    ``oracle_words`` (words representing every element) is given, z is
    checked to actually absorb each of them; otherwise it is trusted.
    """
    z = tuple(z)
    if not z:
        raise InputError("the zero word must be non-empty")
    sys.check_word(z)
    if not is_irreducible(sys, z):
        raise InputError(f"the zero word {format_word(z)} is reducible; pass its normal form")
    if ZERO_LETTER in sys.letters:
        raise InputError("the alphabet already uses the letter '0'; rename it first")
    if oracle_words is not None:
        for raw in oracle_words:
            w = tuple(raw)
            if (normalize(sys, z + w).final != z
                    or normalize(sys, w + z).final != z):
                raise InputError(f"{format_word(z)} does not absorb {format_word(w)}; "
                                 f"it is not a zero of the defined semigroup")

    letters = sys.letters + (ZERO_LETTER,)
    rules: list[tuple[Word, Word]] = list(sys.rules)
    rules.append((z, ZERO_WORD))
    for x in letters:
        for lhs in ((ZERO_LETTER, x), (x, ZERO_LETTER)):
            if (lhs, ZERO_WORD) not in rules:
                rules.append((lhs, ZERO_WORD))
    out_sys = RewriteSystem(letters, tuple(rules))
    cert = CertificateSpec(CERT_IDEAL_EXTENSION, a_letters=(ZERO_LETTER,),
                           u_system=sys, u_zero=None)
    return ConstructionOutput(
        out_sys,
        _freeze_witness({ZERO_LETTER: ZERO_WORD}),
        cert,
        f"adjoin-zero {_digest(serialize_presentation(sys), format_word(z))}",
    )


# ---------------------------------------------------------------------------
# ideal extension

@dataclass(frozen=True)
class IdealExtensionGlue:
    """The words gluing an ideal's system to its quotient's system: rho sends
    each zero-representing word over the nonzero quotient letters to an
    ideal word, sigma and pi give the two-sided products of single letters."""

    rho: dict[Word, Word]                  # u in (B minus zero-class)+ -> A+ word
    sigma: dict[tuple[str, str], Word]     # (a, b) -> A+ word
    pi: dict[tuple[str, str], Word]        # (b, a) -> A+ word


def _zero_form_analysis(u_sys: RewriteSystem, step_budget: int = DEFAULT_STEP_BUDGET):
    """Letters and rules of the quotient system that collapse to the zero
    letter: B0 and Q0 in the construction's bookkeeping."""
    def nf(w):
        return normalize(u_sys, w, step_budget).final

    b_zero = frozenset(l for l in u_sys.letters if nf((l,)) == ZERO_WORD)
    q_zero = tuple(nf(lhs) == ZERO_WORD and nf(rhs) == ZERO_WORD
                   for lhs, rhs in u_sys.rules)
    return b_zero, q_zero


def derive_glue(sg: FiniteSemigroup, t_elements, t_system: RewriteSystem,
                t_witness, u_system: RewriteSystem, u_witness) -> IdealExtensionGlue:
    """Compute the glue maps from a concrete multiplication table.

    ``t_witness`` maps each ideal element (index into ``sg``) to its word in
    the ideal's system; ``u_witness`` maps each non-ideal element to its word
    in the quotient's system.  Letters are matched to elements by normalizing
    them and looking the result up among the witness words.
    """
    t_set = set(t_elements)
    if not t_set:
        raise InputError("the ideal must be non-empty")
    names = sg.element_names
    for t in sorted(t_set):
        for s in range(sg.size):
            for left, right in ((t, s), (s, t)):
                prod = sg.mult(left, right)
                if prod not in t_set:
                    raise InputError(
                        f"not an ideal: {names[left]} * {names[right]} = {names[prod]} "
                        f"falls outside the given set"
                    )

    def invert(system, witness, letter, what):
        nf = normalize(system, (letter,)).final
        rev = {tuple(w): x for x, w in witness.items()}
        if nf not in rev:
            raise InputError(f"letter {letter!r} does not represent a known {what} element")
        return rev[nf]

    a_elem = {a: invert(t_system, t_witness, a, "ideal") for a in t_system.letters}
    b_zero, q_zero = _zero_form_analysis(u_system)
    b_rest = tuple(l for l in u_system.letters if l not in b_zero)
    b_elem = {b: invert(u_system, u_witness, b, "quotient") for b in b_rest}

    sigma = {}
    pi = {}
    for a in t_system.letters:
        for b in b_rest:
            sigma[(a, b)] = tuple(t_witness[sg.mult(a_elem[a], b_elem[b])])
            pi[(b, a)] = tuple(t_witness[sg.mult(b_elem[b], a_elem[a])])

    rho = {}
    for rule, collapses in zip(u_system.rules, q_zero):
        if not collapses:
            continue
        for side in rule:
            if side in rho or any(tok in b_zero for tok in side):
                continue
            elem = b_elem[side[0]]
            for tok in side[1:]:
                elem = sg.mult(elem, b_elem[tok])
            if elem not in t_set:
                raise InputError(f"word {format_word(side)} does not multiply into the ideal")
            rho[side] = tuple(t_witness[elem])
    return IdealExtensionGlue(rho, sigma, pi)


def _checked_glue_value(t_system: RewriteSystem, value, label: str) -> Word:
    word = tuple(value)
    if not word:
        raise InputError(f"glue entry {label} is empty")
    for tok in word:
        if tok not in t_system.letter_set:
            raise InputError(f"glue entry {label} uses letter {tok!r} outside the ideal alphabet")
    if not is_irreducible(t_system, word):
        raise InputError(f"glue entry {label} = {format_word(word)} is reducible")
    return word


def ideal_extension(t_system: RewriteSystem, u_system: RewriteSystem,
                    glue: IdealExtensionGlue, *, t_witness=None, u_witness=None,
                    u_zero_word=None) -> ConstructionOutput:
    """Join a complete system for an ideal with a complete zero-adjoined
    system for the quotient into one system for the whole semigroup.

    The quotient system must carry the distinguished letter 0; if it does
    not, the zero's irreducible word may be passed as ``u_zero_word`` to
    have adjoin_zero applied on the way in, and otherwise this is an error.
    Optional witness maps (element name -> word) are merged into the output
    witness: ideal elements keep their words, quotient elements keep theirs.
    """
    if ZERO_LETTER not in u_system.letters:
        if u_zero_word is None:
            raise InputError(
                "the quotient system has no distinguished letter '0'; run adjoin-zero "
                "on it first (or pass u_zero_word to have that done here)"
            )
        u_system = adjoin_zero(u_system, tuple(u_zero_word)).system

    b_zero, q_zero = _zero_form_analysis(u_system)
    b_rest = tuple(l for l in u_system.letters if l not in b_zero)
    collision = set(t_system.letters) & set(u_system.letters)
    if collision:
        raise InputError(f"alphabets collide on {sorted(collision)}; rename before extending")

    rules: list[tuple[Word, Word]] = list(t_system.rules)
    for rule, collapses in zip(u_system.rules, q_zero):
        if collapses:
            continue
        stray = [tok for side in rule for tok in side if tok in b_zero]
        if stray:
            raise InputError(
                f"rule {format_word(rule[0])} -> {format_word(rule[1])} mixes zero-class "
                f"letters with others; the quotient system is not in zero-adjoined form"
            )
        rules.append(rule)

    rule_one_words: list[Word] = []
    for rule, collapses in zip(u_system.rules, q_zero):
        if not collapses:
            continue
        for side in rule:
            if side not in rule_one_words and all(tok not in b_zero for tok in side):
                rule_one_words.append(side)
    for u in rule_one_words:
        if u not in glue.rho:
            raise InputError(f"missing glue entry rho({format_word(u)})")
        rules.append((u, _checked_glue_value(t_system, glue.rho[u], f"rho({format_word(u)})")))
    for a in t_system.letters:
        for b in b_rest:
            if (a, b) not in glue.sigma:
                raise InputError(f"missing glue entry sigma({a}, {b})")
            rules.append(((a, b), _checked_glue_value(t_system, glue.sigma[(a, b)],
                                                      f"sigma({a}, {b})")))
    for b in b_rest:
        for a in t_system.letters:
            if (b, a) not in glue.pi:
                raise InputError(f"missing glue entry pi({b}, {a})")
            rules.append(((b, a), _checked_glue_value(t_system, glue.pi[(b, a)],
                                                      f"pi({b}, {a})")))

    deduped: list[tuple[Word, Word]] = []
    for rule in rules:
        if rule not in deduped:
            deduped.append(rule)
    out_sys = RewriteSystem(t_system.letters + b_rest, tuple(deduped))

    merged: dict[str, Word] = {}
    for source, mapping in (("ideal", t_witness), ("quotient", u_witness)):
        if not mapping:
            continue
        for name, raw in mapping.items():
            word = tuple(raw)
            if str(name) in merged:
                raise InputError(f"witness name {name} appears on both sides")
            allowed = t_system.letter_set if source == "ideal" else set(b_rest)
            for tok in word:
                if tok not in allowed:
                    raise InputError(f"witness word for {name} strays outside the "
                                     f"{source} alphabet: {format_word(word)}")
            merged[str(name)] = word
    witness = _freeze_witness(merged)
    _check_witness(out_sys, witness, bug=False)

    glue_canon = "\n".join(
        [f"rho {format_word(u)} = {format_word(v)}" for u, v in sorted(glue.rho.items())]
        + [f"sigma {a} {b} = {format_word(v)}" for (a, b), v in sorted(glue.sigma.items())]
        + [f"pi {b} {a} = {format_word(v)}" for (b, a), v in sorted(glue.pi.items())]
    )
    cert = CertificateSpec(CERT_IDEAL_EXTENSION, a_letters=t_system.letters,
                           u_system=u_system, u_zero=ZERO_LETTER)
    return ConstructionOutput(
        out_sys, witness, cert,
        f"ideal-extension {_digest(serialize_presentation(t_system), serialize_presentation(u_system), glue_canon)}",
    )


# ---------------------------------------------------------------------------
# Rees matrix presentations

def _group_element_words(datum: ReesDatum) -> tuple[Word, ...]:
    """Every group element's irreducible word.  Inline groups list them
    directly; for presentation-backed groups the irreducibles are enumerated
    by length until a length contributes none (factors of irreducibles are
    irreducible, so lengths are contiguous)."""
    if datum.group_table is not None:
        return tuple((n,) for n in datum.group_table.element_names)
    sys = datum.group_system
    words: list[Word] = []
    for length in range(1, 33):
        batch = [w for w in enumerate_irreducibles(sys, length) if len(w) == length]
        if not batch:
            break
        words.extend(batch)
        if len(words) > 5000:
            raise InputError("group system has more than 5000 normal forms; "
                             "not usable as a finite group here")
    else:
        raise InputError("group normal forms did not close out by length 32")
    if datum.identity_word not in words:
        raise InputError("the identity word is not among the group's normal forms")
    return tuple(words)


def _permute_identity_to_corner(datum: ReesDatum) -> tuple[ReesDatum, str]:
    """Swap one row and one column so the (1,1) sandwich entry is the group
    identity; the witness map is only a homomorphism with that corner pinned.
    The lexicographically least identity entry is chosen."""
    hits = [(lam, i)
            for lam, row in enumerate(datum.matrix)
            for i, entry in enumerate(row)
            if entry == datum.identity_word]
    if not hits:
        raise InputError("no sandwich entry equals the identity word; renormalize the "
                         "matrix first (entries are never rescaled here)")
    lam0, i0 = min(hits)
    if (lam0, i0) == (0, 0):
        return datum, "swap=none"
    rows = [list(row) for row in datum.matrix]
    rows[0], rows[lam0] = rows[lam0], rows[0]
    for row in rows:
        row[0], row[i0] = row[i0], row[0]
    permuted = ReesDatum(datum.group_system, datum.identity_word, datum.i_size,
                         datum.lambda_size, tuple(tuple(r) for r in rows),
                         datum.group_table)
    return permuted, f"swap=row{lam0 + 1}col{i0 + 1}"


def _datum_canon(datum: ReesDatum) -> str:
    rows = "\n".join(
        ", ".join("null" if e is None else format_word(e) for e in row)
        for row in datum.matrix
    )
    return (serialize_presentation(datum.group_system)
            + f"identity: {format_word(datum.identity_word)}\n"
            + f"I: {datum.i_size}\nLambda: {datum.lambda_size}\n" + rows)


def _build_rees(datum: ReesDatum, include_zero: bool,
                b_letters: tuple[str, ...], c_letters: tuple[str, ...]):
    """Shared rule/witness assembly for the two Rees constructions.  The
    matrix must already have the identity at (1,1).  Returns the system and
    the witness keyed by (i, group word, lambda) triples plus None for the
    zero (0-based indices)."""
    a = datum.group_system.letters
    e = datum.identity_word
    taken = set(a) | {ZERO_LETTER}
    for tok in b_letters + c_letters:
        if tok in taken:
            raise InputError(f"row/column letter {tok!r} collides with the group alphabet")
        taken.add(tok)

    def bw(i: int) -> Word:        # 0-based i >= 1
        return (b_letters[i - 1],)

    def cw(lam: int) -> Word:
        return (c_letters[lam - 1],)

    def rhs(*parts) -> Word:
        if any(p is None for p in parts):
            if not include_zero:
                raise ConstructionError("zero right-hand side in a zero-free construction")
            return ZERO_WORD
        return tuple(tok for p in parts for tok in p)

    p = datum.matrix
    i_range = range(1, datum.i_size)
    l_range = range(1, datum.lambda_size)

    rules: list[tuple[Word, Word]] = list(datum.group_system.rules)
    for i in i_range:                                        # family (4)
        rules.append((bw(i) + e, bw(i)))
    for lam in l_range:
        rules.append((e + cw(lam), cw(lam)))
    for i in i_range:                                        # family (5)
        rules.append((e + bw(i), rhs(p[0][i])))
    for lam in l_range:
        rules.append((cw(lam) + e, rhs(p[lam][0])))
    for lam in l_range:
        for i in i_range:
            rules.append((cw(lam) + bw(i), rhs(p[lam][i])))
    for x in a:                                              # family (5')
        for i in i_range:
            rules.append((((x,) + bw(i)), rhs((x,), p[0][i])))
    for lam in l_range:
        for x in a:
            rules.append((cw(lam) + (x,), rhs(p[lam][0], (x,))))
    for lam in l_range:                                      # family (5'')
        for mu in l_range:
            rules.append((cw(lam) + cw(mu), rhs(p[lam][0], cw(mu))))
    for i in i_range:
        for j in i_range:
            rules.append((bw(i) + bw(j), rhs(bw(i), p[0][j])))

    letters = a + b_letters + c_letters
    if include_zero:
        letters = letters + (ZERO_LETTER,)
        for x in letters:                                    # family (6)
            rules.append(((ZERO_LETTER, x), ZERO_WORD))
            rules.append(((x, ZERO_LETTER), ZERO_WORD))

    deduped: list[tuple[Word, Word]] = []
    seen = set()
    for rule in rules:
        if rule not in seen:
            seen.add(rule)
            deduped.append(rule)
    system = RewriteSystem(letters, tuple(deduped))

    witness: dict[tuple[int, Word, int] | None, Word] = {}
    for i in range(datum.i_size):
        for g in _group_element_words(datum):
            for lam in range(datum.lambda_size):
                bpart = bw(i) if i else ()
                cpart = cw(lam) if lam else ()
                mid = () if (g == e and (bpart or cpart)) else g
                witness[(i, g, lam)] = bpart + mid + cpart
    if include_zero:
        witness[None] = ZERO_WORD
    return system, witness


def _triple_name(key) -> str:
    if key is None:
        return "0"
    i, g, lam = key
    return f"({i + 1}|{'.'.join(g)}|{lam + 1})"


def _rees_output(datum: ReesDatum, include_zero: bool, name: str,
                 b_letters: tuple[str, ...] | None = None,
                 c_letters: tuple[str, ...] | None = None) -> ConstructionOutput:
    permuted, swap = _permute_identity_to_corner(datum)
    if b_letters is None:
        b_letters = tuple(f"b{k}" for k in range(2, datum.i_size + 1))
    if c_letters is None:
        c_letters = tuple(f"c{k}" for k in range(2, datum.lambda_size + 1))
    system, witness = _build_rees(permuted, include_zero, b_letters, c_letters)
    named = _freeze_witness({_triple_name(k): w for k, w in witness.items()})
    _check_witness(system, named, bug=True)
    cert = CertificateSpec(CERT_REES, a_letters=datum.group_system.letters,
                           bc_letters=b_letters + c_letters,
                           zero_letter=ZERO_LETTER if include_zero else None)
    return ConstructionOutput(system, named, cert,
                              f"{name} {_digest(_datum_canon(datum))} {swap}")


def rees_zero(datum: ReesDatum) -> ConstructionOutput:
    """Rewriting system for the Rees matrix semigroup with zero over the
    datum's group, rows I, columns Lambda, and sandwich matrix."""
    return _rees_output(datum, include_zero=True, name="rees-zero")


def rees_simple(datum: ReesDatum) -> ConstructionOutput:
    """Zero-free variant for an all-nonzero sandwich matrix: same rules minus
    the zero letter and its absorption family."""
    if datum.has_zero_entry():
        raise InputError("the matrix has zero entries; use the zero-adjoined "
                         "construction (rees-zero) instead")
    return _rees_output(datum, include_zero=False, name="rees-simple")


# ---------------------------------------------------------------------------
# the recursive pipeline

def _tagged(kind: str, depth: int, size: int) -> tuple[str, ...]:
    """Depth-tagged row/column letters, so recursion levels cannot collide."""
    return tuple(f"{kind}{depth}_{k}" for k in range(2, size + 1))


def _witness_key(coord, fcrs: GroupFcrs, x: int) -> str:
    """Witness-map key for element x of a coordinatized factor: the Rees
    outputs key their witnesses by (row | group word | column) triples."""
    triple = coord.bijection[x]
    if triple is None:
        return _triple_name(None)
    i, g, lam = triple
    return _triple_name((i, fcrs.element_words[g], lam))


def _maximal_subgroup_fcrs(coord, overrides, depth: int) -> GroupFcrs:
    """A complete system for the coordinate group: a user-supplied override
    (keyed by the name of the idempotent the group sits at), or the
    multiplication-table system over depth-tagged letters."""
    identity = find_identity(coord.group)
    key = coord.group.element_names[identity]
    if key in overrides:
        fcrs = overrides[key]
        verify_group_fcrs(coord.group, fcrs)
        return fcrs
    renamed = FiniteSemigroup(
        tuple(f"g{depth}_{n}" for n in coord.group.element_names),
        coord.group.table,
    )
    return cayley_fcrs(renamed)


def _coordinate_datum(coord, fcrs: GroupFcrs) -> ReesDatum:
    matrix = tuple(
        tuple(None if entry is None else fcrs.element_words[entry] for entry in row)
        for row in coord.matrix
    )
    return make_rees_datum(fcrs.system, fcrs.identity_word, matrix)


def _certify_stage(stage: str, system: RewriteSystem, cert: CertificateSpec,
                   ball_len: int, step_budget: int) -> None:
    result = certify(system, cert.comparator(system), ball_len,
                     step_budget=step_budget)
    if result.verdict != COMPLETE:
        raise ConstructionError(
            f"pipeline self-check failed: the {stage} system is {result.verdict}",
            report=result.report,
        )


def regular_pipeline(sg: FiniteSemigroup, subgroup_fcrs_overrides=None, *,
                     ball_len: int = 4,
                     step_budget: int = DEFAULT_STEP_BUDGET) -> ConstructionOutput:
    """Complete rewriting system for any finite regular semigroup, by
    recursion on the ideal structure: peel off a maximal J-class, present it
    as a Rees matrix semigroup over its coordinate group, recurse on the
    rest, and glue with an ideal extension.  Every intermediate system and
    the final one are certified (termination ball + critical pairs) before
    being accepted; a failure here is a bug, not an input problem.
    """
    if not is_regular(sg):
        raise InputError("the pipeline needs a regular semigroup "
                         "(every x must have some y with x y x = x)")
    overrides = dict(subgroup_fcrs_overrides or {})
    out = _pipeline(sg, overrides, 0, ball_len, step_budget)
    return ConstructionOutput(
        out.system, out.witness, out.certificate,
        f"regular-pipeline {_digest(serialize_cayley(sg))}",
    )


def _pipeline(sg: FiniteSemigroup, overrides, depth: int,
              ball_len: int, step_budget: int) -> ConstructionOutput:
    green = green_classes(sg)
    names = sg.element_names

    if len(green.j_classes) == 1:
        coord = coordinatize(sg)
        fcrs = _maximal_subgroup_fcrs(coord, overrides, depth)
        datum = _coordinate_datum(coord, fcrs)
        out = _rees_output(datum, include_zero=False, name="rees-simple",
                           b_letters=_tagged("b", depth, datum.i_size),
                           c_letters=_tagged("c", depth, datum.lambda_size))
        by_triple = {k: w for k, w in out.witness}
        witness = {
            names[x]: by_triple[_witness_key(coord, fcrs, x)]
            for x in range(sg.size)
        }
        result = ConstructionOutput(out.system, _freeze_witness(witness),
                                    out.certificate, out.provenance)
        _certify_stage("base-case Rees", result.system, result.certificate,
                       ball_len, step_budget)
        return result

    j_class = green.maximal_j_classes()[0]
    t_indices = tuple(x for x in range(sg.size) if x not in set(j_class))
    t_pos = {x: k for k, x in enumerate(t_indices)}
    t_sg = FiniteSemigroup(
        tuple(names[x] for x in t_indices),
        tuple(tuple(t_pos[sg.mult(x, y)] for y in t_indices) for x in t_indices),
    )
    t_out = _pipeline(t_sg, overrides, depth + 1, ball_len, step_budget)
    t_words = t_out.witness_map
    t_witness = {x: t_words[names[x]] for x in t_indices}

    pf = principal_factor(sg, j_class)
    coord = coordinatize(pf)
    fcrs = _maximal_subgroup_fcrs(coord, overrides, depth)
    datum = _coordinate_datum(coord, fcrs)
    u_out = _rees_output(datum, include_zero=True, name="rees-zero",
                         b_letters=_tagged("b", depth, datum.i_size),
                         c_letters=_tagged("c", depth, datum.lambda_size))
    _certify_stage(f"depth-{depth} Rees factor", u_out.system, u_out.certificate,
                   ball_len, step_budget)
    u_by_triple = {k: w for k, w in u_out.witness}
    u_witness = {
        pf.to_ambient[x]: u_by_triple[_witness_key(coord, fcrs, x)]
        for x in range(pf.factor.size)
        if x != pf.zero_index
    }

    glue = derive_glue(sg, t_indices, t_out.system, t_witness,
                       u_out.system, u_witness)
    final = ideal_extension(
        t_out.system, u_out.system, glue,
        t_witness={names[x]: w for x, w in t_witness.items()},
        u_witness={names[x]: w for x, w in u_witness.items()},
    )
    _certify_stage(f"depth-{depth} extension", final.system, final.certificate,
                   ball_len, step_budget)
    return final


# ---------------------------------------------------------------------------
# serialization

def serialize_construction(out: ConstructionOutput) -> str:
    lines = [serialize_presentation(out.system).rstrip("\n")]
    for name, word in out.witness:
        lines.append(f"witness: {name} = {format_word(word)}")
    cert = out.certificate
    lines.append(f"certificate: {cert.kind}")
    if cert.kind != CERT_LENGTH:
        lines.append(f"cert-a-letters: {' '.join(cert.a_letters)}")
    if cert.kind == CERT_REES:
        if cert.bc_letters:
            lines.append(f"cert-bc-letters: {' '.join(cert.bc_letters)}")
        if cert.zero_letter is not None:
            lines.append(f"cert-zero-letter: {cert.zero_letter}")
    if cert.kind == CERT_IDEAL_EXTENSION:
        if cert.u_zero is not None:
            lines.append(f"cert-u-zero: {cert.u_zero}")
        u = cert.u_system
        lines.append(f"cert-u-letters: {' '.join(u.letters)}")
        for lhs, rhs in u.rules:
            lines.append(f"cert-u-rule: {format_word(lhs)} -> {format_word(rhs)}")
    lines.append(f"provenance: {out.provenance}")
    return "\n".join(lines) + "\n"


def _parse_rule_payload(payload: str, where: str) -> tuple[Word, Word]:
    toks = payload.split()
    if toks.count("->") != 1:
        raise InputError(f"{where}: a rule needs exactly one '->'")
    cut = toks.index("->")
    lhs, rhs = tuple(toks[:cut]), tuple(toks[cut + 1:])
    if not lhs or not rhs:
        raise InputError(f"{where}: rule sides must be non-empty")
    return lhs, rhs


def parse_construction(text: str, source: str = "<string>") -> ConstructionOutput:
    letters: tuple[str, ...] | None = None
    rules: list[tuple[Word, Word]] = []
    witness: list[tuple[str, Word]] = []
    kind = None
    a_letters: tuple[str, ...] = ()
    bc_letters: tuple[str, ...] = ()
    zero_letter = None
    u_zero = None
    u_letters: tuple[str, ...] | None = None
    u_rules: list[tuple[Word, Word]] = []
    provenance = ""

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"{source}:{lineno}"
        if line.startswith("letters:"):
            letters = tuple(line[len("letters:"):].split())
        elif line.startswith("rule:"):
            rules.append(_parse_rule_payload(line[len("rule:"):], where))
        elif line.startswith("witness:"):
            name, sep, word_text = line[len("witness:"):].strip().partition(" = ")
            if not sep or not name:
                raise InputError(f"{where}: witness lines read '<name> = <word>'")
            witness.append((name, parse_word(word_text)))
        elif line.startswith("certificate:"):
            kind = line[len("certificate:"):].strip()
        elif line.startswith("cert-a-letters:"):
            a_letters = tuple(line[len("cert-a-letters:"):].split())
        elif line.startswith("cert-bc-letters:"):
            bc_letters = tuple(line[len("cert-bc-letters:"):].split())
        elif line.startswith("cert-zero-letter:"):
            zero_letter = line[len("cert-zero-letter:"):].strip()
        elif line.startswith("cert-u-zero:"):
            u_zero = line[len("cert-u-zero:"):].strip()
        elif line.startswith("cert-u-letters:"):
            u_letters = tuple(line[len("cert-u-letters:"):].split())
        elif line.startswith("cert-u-rule:"):
            u_rules.append(_parse_rule_payload(line[len("cert-u-rule:"):], where))
        elif line.startswith("provenance:"):
            provenance = line[len("provenance:"):].strip()
        else:
            raise InputError(f"{where}: unrecognized line {line!r}")

    if letters is None:
        raise InputError(f"{source}: no letters: line")
    if kind is None:
        raise InputError(f"{source}: no certificate: line")
    try:
        system = RewriteSystem(letters, tuple(rules))
    except InputError as exc:
        raise InputError(f"{source}: {exc}") from exc
    u_system = None
    if kind == CERT_IDEAL_EXTENSION:
        if u_letters is None:
            raise InputError(f"{source}: an ideal-extension certificate needs cert-u-letters")
        try:
            u_system = RewriteSystem(u_letters, tuple(u_rules))
        except InputError as exc:
            raise InputError(f"{source}: bad extending system: {exc}") from exc
    cert = CertificateSpec(kind, a_letters=a_letters, u_system=u_system,
                           u_zero=u_zero, bc_letters=bc_letters,
                           zero_letter=zero_letter)
    return ConstructionOutput(system, tuple(sorted(witness)), cert, provenance)


def parse_construction_file(path) -> ConstructionOutput:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read construction file {path}: {exc}") from exc
    return parse_construction(text, source=str(path))


def reverify(out: ConstructionOutput, ball_len: int = 4,
             max_explore: int = 1_000_000,
             step_budget: int = DEFAULT_STEP_BUDGET) -> CertificationResult:
    """Re-run the full verification of a construction output (typically one
    recovered from its serialized form): witness sanity plus termination
    ball plus critical-pair resolution."""
    _check_witness(out.system, out.witness, bug=False)
    comparator = out.certificate.comparator(out.system)
    evidence_result = certify(out.system, comparator, ball_len,
                              max_explore=max_explore, step_budget=step_budget)
    return evidence_result
