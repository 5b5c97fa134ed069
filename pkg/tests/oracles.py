"""Deliberately naive reference implementations used only by the test suite.

Each oracle answers the same question as some library function but by a
different route (literal definitions, brute-force closures), so agreement is
meaningful evidence rather than the code agreeing with itself.
"""

from functools import lru_cache
from itertools import combinations_with_replacement


# --- multiset order via replacement closure ---------------------------------

MAX_ENTRY = 4


def _multiset_universe(max_size):
    out = []
    for size in range(max_size + 1):
        out.extend(combinations_with_replacement(range(MAX_ENTRY + 1), size))
    return out


def _replacements(node, cap):
    """All multisets reachable from node by replacing one element with any
    multiset of strictly smaller values, staying within the size cap."""
    succ = set()
    for x in sorted(set(node)):
        rest = list(node)
        rest.remove(x)
        room = cap - len(rest)
        for size in range(room + 1):
            for z in combinations_with_replacement(range(x), size):
                succ.add(tuple(sorted(rest + list(z))))
    return succ


@lru_cache(maxsize=None)
def _reach_all(cap):
    """Reachability sets for every multiset of size <= cap, computed bottom-up
    in an order that always sees successors first (replacements strictly drop
    the count vector read from the largest value down)."""
    nodes = _multiset_universe(cap)

    def countvec(node):
        return tuple(node.count(v) for v in range(MAX_ENTRY, -1, -1))

    reach = {}
    for node in sorted(nodes, key=countvec):
        acc = {node}
        for nxt in _replacements(node, cap):
            acc |= reach[nxt]
        reach[node] = frozenset(acc)
    return reach


def multiset_greater_oracle(m, n):
    """m > n iff n is reachable from m by one or more replacements."""
    m, n = tuple(sorted(m)), tuple(sorted(n))
    reach = _reach_all(len(m) + len(n))
    return n != m and n in reach[m]


# --- string rewriting over {a, b}: reducts and joinability ------------------

CLOSURE_MAX_LEN = 8
CLOSURE_MAX_NODES = 4000


def string_reducts(rules, word):
    """One-step reducts of a plain string under (lhs, rhs) string rules,
    found by sliding-window scan."""
    out = set()
    for lhs, rhs in rules:
        start = 0
        while True:
            i = word.find(lhs, start)
            if i < 0:
                break
            out.add(word[:i] + rhs + word[i + len(lhs):])
            start = i + 1
    return out


def string_closure(rules, word):
    """Descendant set of word; second value tells whether it is complete
    (False when the length or node cap was hit)."""
    seen = {word}
    frontier = [word]
    complete = True
    while frontier:
        nxt = []
        for u in frontier:
            for v in string_reducts(rules, u):
                if len(v) > CLOSURE_MAX_LEN:
                    complete = False
                    continue
                if v not in seen:
                    if len(seen) >= CLOSURE_MAX_NODES:
                        return seen, False
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen, complete


def joinability_fork_scan(rules, max_len=6):
    """Scan all words up to max_len over {a, b} for two distinct one-step
    reducts that are provably unjoinable (disjoint, fully explored closures).

    Returns (found_definite_fork, any_inconclusive): the second flag is set
    when some closure was truncated, in which case absence of a definite
    fork proves nothing.
    """
    alphabet = "ab"
    inconclusive = False
    closures = {}

    def closure(word):
        if word not in closures:
            closures[word] = string_closure(rules, word)
        return closures[word]

    words = [""]
    for _ in range(max_len):
        words = [w + x for w in words for x in alphabet]
        for word in words:
            reducts = sorted(string_reducts(rules, word))
            if len(reducts) < 2:
                continue
            for i in range(len(reducts)):
                for j in range(i + 1, len(reducts)):
                    cu, cu_ok = closure(reducts[i])
                    cv, cv_ok = closure(reducts[j])
                    if cu & cv:
                        continue
                    if cu_ok and cv_ok:
                        return True, inconclusive
                    inconclusive = True
    return False, inconclusive


# --- Green's relations via literal ideal sets --------------------------------

def green_by_ideal_sets(table):
    """R/L/J/H/D partitions straight from the defining ideals xS^1, S^1x,
    S^1xS^1, with D as the composition of R and L.

    Returns a dict of relation name to partition, each partition a set of
    frozensets of element indices, plus the J-order as a set of (below,
    above) index pairs meaning S^1 x S^1 is contained in S^1 y S^1.
    """
    n = len(table)
    elems = range(n)

    def right_ideal(x):
        return frozenset({x} | {table[x][y] for y in elems})

    def left_ideal(x):
        return frozenset({x} | {table[y][x] for y in elems})

    def two_sided(x):
        out = {x} | {table[x][y] for y in elems} | {table[y][x] for y in elems}
        out |= {table[s][table[x][t]] for s in elems for t in elems}
        return frozenset(out)

    def partition(key):
        groups = {}
        for x in elems:
            groups.setdefault(key(x), []).append(x)
        return {frozenset(g) for g in groups.values()}

    r_part = partition(right_ideal)
    l_part = partition(left_ideal)
    h_part = set()
    for rc in r_part:
        for lc in l_part:
            both = rc & lc
            if both:
                h_part.add(frozenset(both))

    def r_class_of(x):
        return next(c for c in r_part if x in c)

    def l_class_of(x):
        return next(c for c in l_part if x in c)

    d_part = set()
    assigned = set()
    for x in elems:
        if x in assigned:
            continue
        dc = set()
        for z in r_class_of(x):
            dc |= l_class_of(z)
        d_part.add(frozenset(dc))
        assigned |= dc
    j_part = partition(two_sided)
    j_leq = {(x, y) for x in elems for y in elems if two_sided(x) <= two_sided(y)}
    return {"r": r_part, "l": l_part, "h": h_part, "d": d_part, "j": j_part,
            "j_leq": j_leq}
