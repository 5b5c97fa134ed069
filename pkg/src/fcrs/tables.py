"""Finite semigroups as Cayley tables: Green's relations, regularity,
principal factors, Rees coordinates, and the multiplication-table rewriting
system for groups.

Determinism is a design rule here: every choice (class indexing, coordinate
representatives, adjoined-zero names) is pinned to minimal element ids so
that two runs produce identical artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .systems import RewriteSystem, is_irreducible, make_system, normalize, parse_presentation_file
from .words import Word, format_word, parse_word, validate_token


@dataclass(frozen=True)
class FiniteSemigroup:
    element_names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]  # table[i][j] = index of i*j

    def __post_init__(self):
        n = len(self.element_names)
        if n < 1:
            raise InputError("a semigroup needs at least one element")
        seen = set()
        for name in self.element_names:
            validate_token(name)
            if name in seen:
                raise InputError(f"duplicate element name {name!r}")
            seen.add(name)
        if len(self.table) != n:
            raise InputError(f"table has {len(self.table)} rows for {n} elements")
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise InputError(f"table row {i} has {len(row)} entries for {n} elements")
            for v in row:
                if not 0 <= v < n:
                    raise InputError(f"table entry {v} out of range 0..{n - 1}")
        for x in range(n):
            for y in range(n):
                xy = self.table[x][y]
                for z in range(n):
                    if self.table[xy][z] != self.table[x][self.table[y][z]]:
                        names = self.element_names
                        raise InputError(
                            "not associative: "
                            f"({names[x]} {names[y]}) {names[z]} != {names[x]} ({names[y]} {names[z]})"
                        )

    @property
    def size(self) -> int:
        return len(self.element_names)

    def mult(self, x: int, y: int) -> int:
        return self.table[x][y]

    def index(self, name: str) -> int:
        try:
            return self.element_names.index(name)
        except ValueError:
            raise InputError(f"no element named {name!r}") from None


def make_semigroup(names, table) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(names), tuple(tuple(row) for row in table))


def load_and_validate(text: str, source: str = "<string>") -> FiniteSemigroup:
    """Parse and validate the Cayley table document format::

        # comment
        elements: e a
        row: 0 1
        row: 1 0
    """
    names: tuple[str, ...] | None = None
    rows: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("elements:"):
            if names is not None:
                raise InputError(f"{source}:{lineno}: duplicate elements: line")
            names = tuple(line[len("elements:"):].split())
            if not names:
                raise InputError(f"{source}:{lineno}: empty element list")
        elif line.startswith("row:"):
            if names is None:
                raise InputError(f"{source}:{lineno}: row before the elements: line")
            fields = line[len("row:"):].split()
            try:
                rows.append(tuple(int(f) for f in fields))
            except ValueError:
                raise InputError(f"{source}:{lineno}: table entries must be integers") from None
        else:
            raise InputError(f"{source}:{lineno}: expected 'elements:' or 'row:', got {line!r}")
    if names is None:
        raise InputError(f"{source}: no elements: line")
    try:
        return FiniteSemigroup(names, tuple(rows))
    except InputError as exc:
        raise InputError(f"{source}: {exc}") from exc


def load_cayley_file(path) -> FiniteSemigroup:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read table file {path}: {exc}") from exc
    return load_and_validate(text, source=str(path))


def serialize_cayley(sg: FiniteSemigroup) -> str:
    lines = [f"elements: {' '.join(sg.element_names)}"]
    lines.extend("row: " + " ".join(str(v) for v in row) for row in sg.table)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Green's relations

@dataclass(frozen=True)
class GreenClasses:
    r_classes: tuple[tuple[int, ...], ...]
    l_classes: tuple[tuple[int, ...], ...]
    h_classes: tuple[tuple[int, ...], ...]
    d_classes: tuple[tuple[int, ...], ...]
    j_classes: tuple[tuple[int, ...], ...]
    j_leq: frozenset[tuple[int, int]]  # (x, y): the class of x sits below that of y

    def j_class_of(self, x: int) -> tuple[int, ...]:
        return next(c for c in self.j_classes if x in c)

    def maximal_j_classes(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for c in self.j_classes:
            rep = c[0]
            if all((rep, d[0]) not in self.j_leq or (d[0], rep) in self.j_leq
                   for d in self.j_classes):
                out.append(c)
        return tuple(out)


def _reachability(sg: FiniteSemigroup, right: bool, left: bool) -> list[set[int]]:
    """reach[x] = elements reachable from x by the chosen one-sided
    multiplications (x itself included)."""
    n = sg.size
    reach = []
    for start in range(n):
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                candidates = []
                if right:
                    candidates.extend(sg.table[u])
                if left:
                    candidates.extend(sg.table[s][u] for s in range(n))
                for v in candidates:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        reach.append(seen)
    return reach


def _mutual_classes(reach: list[set[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(reach)
    classes = {}
    for x in range(n):
        key = frozenset(y for y in reach[x] if x in reach[y])
        classes.setdefault(key, []).append(x)
    return tuple(sorted((tuple(sorted(c)) for c in classes.values()), key=lambda c: c[0]))


def green_classes(sg: FiniteSemigroup) -> GreenClasses:
    """Green's relations via reachability in the one-sided Cayley graphs:
    two elements are R-related when each is reachable from the other by
    right multiplications, and so on.  (The test oracle instead compares
    literal ideal sets, a genuinely different route to the same classes.)
    """
    r_reach = _reachability(sg, right=True, left=False)
    l_reach = _reachability(sg, right=False, left=True)
    j_reach = _reachability(sg, right=True, left=True)
    r_cls = _mutual_classes(r_reach)
    l_cls = _mutual_classes(l_reach)
    j_cls = _mutual_classes(j_reach)

    h_map: dict[tuple[int, int], list[int]] = {}
    r_of = {x: i for i, c in enumerate(r_cls) for x in c}
    l_of = {x: i for i, c in enumerate(l_cls) for x in c}
    for x in range(sg.size):
        h_map.setdefault((r_of[x], l_of[x]), []).append(x)
    h_cls = tuple(sorted((tuple(sorted(c)) for c in h_map.values()), key=lambda c: c[0]))

    # D is the join of R and L: merge classes sharing an element
    parent = list(range(sg.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    for cls in r_cls + l_cls:
        for x in cls[1:]:
            union(cls[0], x)
    d_map: dict[int, list[int]] = {}
    for x in range(sg.size):
        d_map.setdefault(find(x), []).append(x)
    d_cls = tuple(sorted((tuple(sorted(c)) for c in d_map.values()), key=lambda c: c[0]))

    j_leq = frozenset(
        (x, y) for y in range(sg.size) for x in j_reach[y]
    )
    return GreenClasses(r_cls, l_cls, h_cls, d_cls, j_cls, j_leq)


def is_regular(sg: FiniteSemigroup) -> bool:
    return all(
        any(sg.mult(x, sg.mult(y, x)) == x for y in range(sg.size))
        for x in range(sg.size)
    )


def find_identity(sg: FiniteSemigroup) -> int | None:
    for e in range(sg.size):
        if all(sg.mult(e, x) == x and sg.mult(x, e) == x for x in range(sg.size)):
            return e
    return None


def find_zero(sg: FiniteSemigroup) -> int | None:
    for z in range(sg.size):
        if all(sg.mult(z, x) == z and sg.mult(x, z) == z for x in range(sg.size)):
            return z
    return None


def is_group(sg: FiniteSemigroup) -> bool:
    e = find_identity(sg)
    if e is None:
        return False
    return all(
        any(sg.mult(x, y) == e and sg.mult(y, x) == e for y in range(sg.size))
        for x in range(sg.size)
    )


# ---------------------------------------------------------------------------
# subgroups, principal factors, coordinates

@dataclass(frozen=True)
class MaximalSubgroup:
    group: FiniteSemigroup
    embedding: tuple[int, ...]  # group element index -> ambient element index


def maximal_subgroup(sg: FiniteSemigroup, e: int) -> MaximalSubgroup:
    """The H-class of the idempotent e with its induced multiplication."""
    if sg.mult(e, e) != e:
        raise InputError(f"element {sg.element_names[e]!r} is not idempotent")
    green = green_classes(sg)
    h = next(c for c in green.h_classes if e in c)
    members = tuple(sorted(h))
    pos = {x: k for k, x in enumerate(members)}
    table = []
    for x in members:
        row = []
        for y in members:
            xy = sg.mult(x, y)
            if xy not in pos:
                raise InputError("H-class of the given idempotent is not closed")
            row.append(pos[xy])
        table.append(tuple(row))
    group = FiniteSemigroup(tuple(sg.element_names[x] for x in members), tuple(table))
    if not is_group(group):
        raise InputError("H-class of the given idempotent is not a group")
    return MaximalSubgroup(group, members)


def _fresh_zero_name(taken) -> str:
    name = "0"
    while name in taken:
        name = "z" + name
    return name


@dataclass(frozen=True)
class PrincipalFactor:
    j_class: tuple[int, ...]           # element indices in the ambient semigroup
    factor: FiniteSemigroup            # J with a zero adjoined
    zero_index: int                    # index of the zero inside factor
    to_ambient: tuple[int, ...]        # factor nonzero index -> ambient index


def principal_factor(sg: FiniteSemigroup, j_class) -> PrincipalFactor:
    """J with every product falling outside J collapsed to an adjoined zero."""
    members = tuple(sorted(j_class))
    member_set = set(members)
    pos = {x: k for k, x in enumerate(members)}
    names = [sg.element_names[x] for x in members]
    zero_name = _fresh_zero_name(set(names))
    names.append(zero_name)
    zero = len(members)
    table = []
    for x in members:
        row = []
        for y in members:
            xy = sg.mult(x, y)
            row.append(pos[xy] if xy in member_set else zero)
        row.append(zero)
        table.append(tuple(row))
    table.append(tuple([zero] * (len(members) + 1)))
    factor = FiniteSemigroup(tuple(names), tuple(table))
    return PrincipalFactor(members, factor, zero, members)


@dataclass(frozen=True)
class ReesCoordinatization:
    group: FiniteSemigroup
    group_embedding: tuple[int, ...]     # group index -> factor element index
    i_size: int
    lambda_size: int
    matrix: tuple[tuple[int | None, ...], ...]  # [lambda][i] -> group index, None = zero
    r_reps: tuple[int, ...]              # I -> factor element index
    q_reps: tuple[int, ...]              # Lambda -> factor element index
    bijection: tuple[tuple[int, int, int] | None, ...]  # factor index -> (i, g, lambda)
    zero_index: int | None


def _rees_product(coord: ReesCoordinatization, t1, t2):
    if t1 is None or t2 is None:
        return None
    i, g, lam = t1
    j, h, mu = t2
    p = coord.matrix[lam][j]
    if p is None:
        return None
    gph = coord.group.mult(coord.group.mult(g, p), h)
    return (i, gph, mu)


def coordinatize(factor) -> ReesCoordinatization:
    """Rees coordinates of a completely (0-)simple semigroup.

    Deterministic throughout: classes are ordered by minimal element id, the
    row/column meeting at an idempotent H-class with the lexicographically
    least class pair is moved to position (1, 1), and its idempotent serves
    as both representatives there, which pins the sandwich entry at (1, 1)
    to the group identity.  The resulting bijection is verified against the
    coordinate multiplication rule on every pair before returning.
    """
    if isinstance(factor, PrincipalFactor):
        sg = factor.factor
        zero = factor.zero_index
    else:
        sg = factor
        zero = find_zero(sg) if sg.size > 1 else None

    nonzero = [x for x in range(sg.size) if x != zero]
    if not nonzero:
        raise InputError("not completely 0-simple: no nonzero elements")
    if zero is not None and all(
        sg.mult(x, y) == zero for x in nonzero for y in nonzero
    ):
        raise InputError("not completely 0-simple: all products vanish")

    green = green_classes(sg)
    expected = {tuple(sorted(nonzero))} | ({(zero,)} if zero is not None else set())
    if set(green.j_classes) != expected:
        raise InputError("not completely 0-simple: nonzero part is not a single J-class")

    r_cls = [c for c in green.r_classes if zero is None or zero not in c]
    l_cls = [c for c in green.l_classes if zero is None or zero not in c]

    idem = {x for x in nonzero if sg.mult(x, x) == x}
    swap = None
    for lam, lc in enumerate(l_cls):
        for i, rc in enumerate(r_cls):
            if idem & set(rc) & set(lc):
                swap = (lam, i)
                break
        if swap:
            break
    if swap is None:
        raise InputError("not completely 0-simple: no idempotent H-class")
    lam0, i0 = swap
    r_cls.insert(0, r_cls.pop(i0))
    l_cls.insert(0, l_cls.pop(lam0))

    h11 = set(r_cls[0]) & set(l_cls[0])
    e11 = min(idem & h11)
    sub = maximal_subgroup(sg, e11)
    group_pos = {x: k for k, x in enumerate(sub.embedding)}

    r_reps = [e11]
    for rc in r_cls[1:]:
        meet = set(rc) & set(l_cls[0])
        if not meet:
            raise InputError("not completely 0-simple: an R-class misses the first L-class")
        r_reps.append(min(meet))
    q_reps = [e11]
    for lc in l_cls[1:]:
        meet = set(lc) & set(r_cls[0])
        if not meet:
            raise InputError("not completely 0-simple: an L-class misses the first R-class")
        q_reps.append(min(meet))

    matrix = []
    for q in q_reps:
        row = []
        for r in r_reps:
            qr = sg.mult(q, r)
            if qr == zero:
                row.append(None)
            elif qr in group_pos:
                row.append(group_pos[qr])
            else:
                raise InputError("not completely 0-simple: sandwich product left the group H-class")
        matrix.append(tuple(row))

    r_of = {x: i for i, c in enumerate(r_cls) for x in c}
    l_of = {x: lam for lam, c in enumerate(l_cls) for x in c}
    bij: list[tuple[int, int, int] | None] = [None] * sg.size
    for x in nonzero:
        i, lam = r_of[x], l_of[x]
        hits = [
            g for g in range(sub.group.size)
            if sg.mult(sg.mult(r_reps[i], sub.embedding[g]), q_reps[lam]) == x
        ]
        if len(hits) != 1:
            raise InputError(f"not completely 0-simple: {sg.element_names[x]!r} has "
                             f"{len(hits)} coordinate candidates")
        bij[x] = (i, hits[0], lam)

    coord = ReesCoordinatization(
        sub.group, sub.embedding, len(r_cls), len(l_cls),
        tuple(matrix), tuple(r_reps), tuple(q_reps), tuple(bij), zero,
    )
    for x in range(sg.size):
        for y in range(sg.size):
            want = coord.bijection[sg.mult(x, y)]
            got = _rees_product(coord, coord.bijection[x], coord.bijection[y])
            if want != got:
                raise InputError(
                    "not completely 0-simple: coordinates do not transport the product of "
                    f"{sg.element_names[x]!r} and {sg.element_names[y]!r}"
                )
    return coord


# ---------------------------------------------------------------------------
# group rewriting systems

@dataclass(frozen=True)
class GroupFcrs:
    """A complete rewriting system for a group together with the irreducible
    word representing each element."""

    system: RewriteSystem
    element_words: tuple[Word, ...]
    identity_word: Word


def cayley_fcrs(group: FiniteSemigroup) -> GroupFcrs:
    """The multiplication-table system: one letter per element, a rule
    x y -> z for every product.  Complete by construction, with the single
    letters as the irreducible words.
    """
    if not is_group(group):
        raise InputError("cayley_fcrs needs a group")
    names = group.element_names
    rules = []
    for x in range(group.size):
        for y in range(group.size):
            rules.append(((names[x], names[y]), (names[group.mult(x, y)],)))
    system = make_system(names, rules)
    identity = find_identity(group)
    return GroupFcrs(system, tuple((n,) for n in names), (names[identity],))


def verify_group_fcrs(group: FiniteSemigroup, fcrs: GroupFcrs) -> None:
    """Validate a user-supplied group system: element words must be distinct
    irreducibles, the identity word must match, and concatenation must
    transport the whole multiplication table."""
    if len(fcrs.element_words) != group.size:
        raise InputError("element word count differs from the group order")
    if len(set(fcrs.element_words)) != group.size:
        raise InputError("element words are not distinct")
    for word in fcrs.element_words:
        if not is_irreducible(fcrs.system, word):
            raise InputError(f"element word {format_word(word)!r} is reducible")
    e = find_identity(group)
    if fcrs.identity_word != fcrs.element_words[e]:
        raise InputError("identity word does not match the identity element's word")
    for x in range(group.size):
        for y in range(group.size):
            got = normalize(fcrs.system, fcrs.element_words[x] + fcrs.element_words[y]).final
            want = fcrs.element_words[group.mult(x, y)]
            if got != want:
                raise InputError(
                    f"group system does not transport {group.element_names[x]} * "
                    f"{group.element_names[y]}: got {format_word(got)}, want {format_word(want)}"
                )


# ---------------------------------------------------------------------------
# Rees datum documents

@dataclass(frozen=True)
class ReesDatum:
    group_system: RewriteSystem
    identity_word: Word
    i_size: int
    lambda_size: int
    matrix: tuple[tuple[Word | None, ...], ...]  # [lambda][i], None = zero entry
    group_table: FiniteSemigroup | None = None   # known for inline groups

    def has_zero_entry(self) -> bool:
        return any(entry is None for row in self.matrix for entry in row)


def _validate_group_letters(system: RewriteSystem, source: str):
    for tok in system.letters:
        if tok in ("0", "null") or "," in tok:
            raise InputError(f"{source}: group letter {tok!r} is reserved by the datum format")


def make_rees_datum(group_system: RewriteSystem, identity_word: Word,
                    matrix, group_table: FiniteSemigroup | None = None,
                    source: str = "<datum>") -> ReesDatum:
    _validate_group_letters(group_system, source)
    rows = tuple(tuple(entry if entry is None else tuple(entry) for entry in row)
                 for row in matrix)
    if not rows or not rows[0]:
        raise InputError(f"{source}: the matrix needs at least one row and one column")
    i_size = len(rows[0])
    if any(len(row) != i_size for row in rows):
        raise InputError(f"{source}: ragged matrix rows")
    identity_word = tuple(identity_word)
    if not identity_word:
        raise InputError(f"{source}: the identity word must be non-empty")
    group_system.check_word(identity_word)
    if not is_irreducible(group_system, identity_word):
        raise InputError(f"{source}: identity word {format_word(identity_word)!r} is reducible")
    if normalize(group_system, identity_word + identity_word).final != identity_word:
        raise InputError(f"{source}: identity word {format_word(identity_word)!r} is not "
                         f"idempotent under the group system")
    for lam, row in enumerate(rows):
        for i, entry in enumerate(row):
            if entry is None:
                continue
            group_system.check_word(entry)
            if not entry:
                raise InputError(f"{source}: empty matrix entry at row {lam + 1}, column {i + 1}")
            if not is_irreducible(group_system, entry):
                raise InputError(
                    f"{source}: matrix entry {format_word(entry)!r} at row {lam + 1}, "
                    f"column {i + 1} is reducible; supply its normal form"
                )
    for lam, row in enumerate(rows):
        if all(entry is None for entry in row):
            raise InputError(f"{source}: matrix row {lam + 1} is entirely zero (not regular)")
    for i in range(i_size):
        if all(row[i] is None for row in rows):
            raise InputError(f"{source}: matrix column {i + 1} is entirely zero (not regular)")
    if group_table is not None:
        verify_group_fcrs(group_table, GroupFcrs(
            group_system, tuple((n,) for n in group_table.element_names), identity_word))
    return ReesDatum(group_system, identity_word, i_size, len(rows), rows, group_table)


def parse_rees_datum(text: str, source: str = "<string>", base_dir: str = ".") -> ReesDatum:
    """Parse the Rees datum document::

        group: z2.prs            # or inline group-elements: / group-row: lines
        identity: e
        I: 2
        Lambda: 2
        row: e, e
        row: e, null
    """
    import os

    group_path = None
    group_names = None
    group_rows: list[str] = []
    identity_text = None
    i_size = None
    lambda_size = None
    matrix_rows: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("group:"):
            group_path = line[len("group:"):].strip()
        elif line.startswith("group-elements:"):
            group_names = line
        elif line.startswith("group-row:"):
            group_rows.append(line[len("group-row:"):].lstrip())
        elif line.startswith("identity:"):
            identity_text = line[len("identity:"):].strip()
        elif line.startswith("I:"):
            i_size = line[len("I:"):].strip()
        elif line.startswith("Lambda:"):
            lambda_size = line[len("Lambda:"):].strip()
        elif line.startswith("row:"):
            matrix_rows.append((line[len("row:"):], lineno))
        else:
            raise InputError(f"{source}:{lineno}: unrecognized line {line!r}")

    if (group_path is None) == (group_names is None):
        raise InputError(f"{source}: give exactly one of group: or group-elements:")
    group_table = None
    if group_path is not None:
        group_system = parse_presentation_file(os.path.join(base_dir, group_path))
    else:
        cayley_text = group_names + "\n" + "\n".join("row: " + r for r in group_rows)
        cayley_text = cayley_text.replace("group-elements:", "elements:", 1)
        group_table = load_and_validate(cayley_text, source=f"{source} (inline group)")
        if not is_group(group_table):
            raise InputError(f"{source}: the inline table is not a group")
        group_system = cayley_fcrs(group_table).system
    if identity_text is None:
        raise InputError(f"{source}: missing identity: line")
    if i_size is None or lambda_size is None:
        raise InputError(f"{source}: missing I: or Lambda: line")
    try:
        i_n, lam_n = int(i_size), int(lambda_size)
    except ValueError:
        raise InputError(f"{source}: I: and Lambda: must be integers") from None
    if i_n < 1 or lam_n < 1:
        raise InputError(f"{source}: I and Lambda must be at least 1")
    if len(matrix_rows) != lam_n:
        raise InputError(f"{source}: expected {lam_n} matrix rows, found {len(matrix_rows)}")

    matrix = []
    for payload, lineno in matrix_rows:
        fields = [f.strip() for f in payload.split(",")]
        if len(fields) != i_n:
            raise InputError(f"{source}:{lineno}: expected {i_n} entries, found {len(fields)}")
        row = []
        for f in fields:
            if f == "null":
                row.append(None)
            elif not f:
                raise InputError(f"{source}:{lineno}: empty matrix entry")
            else:
                row.append(parse_word(f))
        matrix.append(tuple(row))
    return make_rees_datum(group_system, parse_word(identity_text), matrix,
                           group_table, source=source)


def load_rees_file(path) -> ReesDatum:
    import os

    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read Rees datum file {path}: {exc}") from exc
    return parse_rees_datum(text, source=str(path), base_dir=os.path.dirname(path) or ".")
