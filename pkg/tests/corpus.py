"""Shared multiplication tables for the test suite.

Transformation composition is left-first throughout: the product f*g is
"apply f, then g".
"""

from itertools import permutations, product

from fcrs.tables import FiniteSemigroup, make_semigroup


def trivial() -> FiniteSemigroup:
    return make_semigroup(("t",), ((0,),))


def cyclic(n: int) -> FiniteSemigroup:
    names = tuple("e" if k == 0 else "a" if k == 1 else f"a{k}" for k in range(n))
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return make_semigroup(names, table)


def _compose_table(maps, prefix):
    """Semigroup of maps under left-first composition, named by image tuples."""
    index = {f: k for k, f in enumerate(maps)}
    names = tuple(prefix + "".join(str(v) for v in f) for f in maps)
    table = tuple(
        tuple(index[tuple(g[f[x]] for x in range(len(f)))] for g in maps)
        for f in maps
    )
    return make_semigroup(names, table)


def sym3() -> FiniteSemigroup:
    return _compose_table(sorted(permutations(range(3))), "s")


def klein4() -> FiniteSemigroup:
    # Z2 x Z2: every non-identity element squares to the identity.
    return make_semigroup(
        ("e", "a", "b", "c"),
        ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)),
    )


def full_transformations(n: int) -> FiniteSemigroup:
    return _compose_table(sorted(product(range(n), repeat=n)), "t")


def brandt_b2() -> FiniteSemigroup:
    """The five-element Brandt semigroup: matrix units plus zero."""
    units = [(1, 1), (1, 2), (2, 1), (2, 2)]
    names = tuple(f"x{i}{j}" for i, j in units) + ("0",)
    zero = len(units)

    def mult(a, b):
        if a == zero or b == zero:
            return zero
        (i, j), (k, l) = units[a], units[b]
        return units.index((i, l)) if j == k else zero

    n = len(names)
    return make_semigroup(names, tuple(tuple(mult(a, b) for b in range(n)) for a in range(n)))


def rectangular_band(m: int, k: int) -> FiniteSemigroup:
    cells = [(i, j) for i in range(m) for j in range(k)]
    names = tuple(f"b{i}{j}" for i, j in cells)
    table = tuple(
        tuple(cells.index((i, l)) for (_, l) in cells) for (i, _) in cells
    )
    return make_semigroup(names, table)


def chain_semilattice(n: int) -> FiniteSemigroup:
    names = tuple(f"m{k}" for k in range(n))
    table = tuple(tuple(min(i, j) for j in range(n)) for i in range(n))
    return make_semigroup(names, table)


def right_zero(n: int) -> FiniteSemigroup:
    names = tuple(f"r{k}" for k in range(n))
    return make_semigroup(names, tuple(tuple(range(n)) for _ in range(n)))


def left_zero(n: int) -> FiniteSemigroup:
    names = tuple(f"l{k}" for k in range(n))
    return make_semigroup(names, tuple(tuple(i for _ in range(n)) for i in range(n)))


def null2() -> FiniteSemigroup:
    """Two-element null semigroup: every product is the zero."""
    return make_semigroup(("0", "a"), ((0, 0), (0, 0)))


def semilattice2() -> FiniteSemigroup:
    return make_semigroup(("z", "e"), ((0, 0), (0, 1)))


def nilpotent3() -> FiniteSemigroup:
    """x, x^2, and a zero that x^3 hits: the smallest ideal-extension example
    where the quotient's zero-collapsing rule has a zero-free side."""
    return make_semigroup(("0", "a", "e"), ((0, 0, 0), (0, 0, 0), (0, 0, 1)))


def nonregular3() -> FiniteSemigroup:
    """{0, a, e} with aa = 0 and e acting as identity; a has no inner inverse."""
    return make_semigroup(("0", "a", "e"), ((0, 0, 0), (0, 0, 1), (0, 1, 2)))


def group_tables() -> list[FiniteSemigroup]:
    return [trivial()] + [cyclic(n) for n in range(2, 7)] + [sym3()]


def rees_table(group: FiniteSemigroup, matrix) -> FiniteSemigroup:
    """Literal multiplication table of the Rees matrix semigroup with zero:
    elements are (i, g, lam) triples plus a zero, (i,g,lam)(j,h,mu) =
    (i, g p[lam][j] h, mu) and zero where the sandwich entry is None.

    ``matrix`` is [lam][i] with entries naming group elements or None.
    Built directly from the definition, as an oracle for the presentations.
    """
    p = [[None if e is None else group.index(e) for e in row] for row in matrix]
    lam_size, i_size = len(p), len(p[0])
    triples = [(i, g, lam) for i in range(i_size) for g in range(group.size)
               for lam in range(lam_size)]
    names = ("zz",) + tuple(f"m{i}_{group.element_names[g]}_{lam}"
                            for i, g, lam in triples)
    pos = {t: k + 1 for k, t in enumerate(triples)}

    def mult(s, t):
        if s == 0 or t == 0:
            return 0
        i, g, lam = triples[s - 1]
        j, h, mu = triples[t - 1]
        entry = p[lam][j]
        if entry is None:
            return 0
        return pos[(i, group.mult(group.mult(g, entry), h), mu)]

    n = len(names)
    table = tuple(tuple(mult(s, t) for t in range(n)) for s in range(n))
    return make_semigroup(names, table)


def rees_datum_corpus():
    """(label, group, matrix) triples for the Rees constructions: every group
    in group_tables() paired with matrices up to 3x3, with and without zero
    entries, identity not always in the corner."""
    cases = []
    for group in group_tables():
        e = group.element_names[0]
        names = group.element_names
        x = names[1] if group.size > 1 else e
        cases.append((f"{group.size}g-1x1", group, [[e]]))
        cases.append((f"{group.size}g-2x2-zero", group, [[e, e], [e, None]]))
        cases.append((f"{group.size}g-2x2-offcorner", group, [[x, e], [e, None]]))
        cases.append((f"{group.size}g-3x2", group, [[e, x], [None, e], [e, None]]))
        cases.append((f"{group.size}g-3x3-zeros", group,
                      [[e, None, None], [None, e, x], [x, e, None]]))
    return cases


def green_corpus() -> list[FiniteSemigroup]:
    return [
        trivial(), cyclic(2), cyclic(3), cyclic(4), cyclic(6), sym3(),
        brandt_b2(), full_transformations(2), full_transformations(3),
        rectangular_band(2, 2), rectangular_band(2, 3), chain_semilattice(3),
        right_zero(2), left_zero(2), null2(), semilattice2(),
    ]
