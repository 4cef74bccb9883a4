"""Concrete small structures and exhaustive generators of small groups/monoids.

Groups of order <= 24 are all solvable, so each one is a cyclic extension
N . C_p of a group N of order n/p by a prime.  ``groups_of_order`` builds every
such extension and keeps one representative per isomorphism class.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product as iproduct

from .algebra import (
    Hom,
    Structure,
    Variety,
    closure,
    generators,
    homomorphisms,
    product,
    structure,
)

GROUP = Variety("group")


def _group(elements, table, variety="group"):
    return structure(variety, elements, [list(r) for r in table])


# --- permutation groups ---------------------------------------------------


def _perm_name(p):
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        cycles.append("(" + "".join(map(str, c)) + ")")
    return "".join(cycles) or "e"


def permutation_group(gens, degree, order_key=None):
    """Group generated by permutations (tuples acting on range(degree))."""
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    key = order_key or (lambda p: (p != ident, _perm_order(p), p))
    elist = sorted(elems, key=key)
    pos = {p: i for i, p in enumerate(elist)}
    # (p*q)(i) = p(q(i)): apply q first
    table = [[pos[tuple(p[q[i]] for i in range(degree))] for q in elist] for p in elist]
    return _group([_perm_name(p) for p in elist], table)


def _perm_order(p):
    ident = tuple(range(len(p)))
    k, q = 1, p
    while q != ident:
        q = tuple(p[q[i]] for i in range(len(p)))
        k += 1
    return k


def symmetric3():
    """S3 with elements e, (12), (13), (23), (123), (132)."""
    order = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    G = permutation_group([(1, 0, 2), (1, 2, 0)], 3)
    return relabel(G, order)


def relabel(G: Structure, order):
    """Reorder elements of G by the given list of names."""
    idx = [G.index(n) for n in order]
    pos = {a: i for i, a in enumerate(idx)}
    t1 = [[pos[G.op1[a][b]] for b in idx] for a in idx]
    t2 = None if G.op2 is None else [[pos[G.op2[a][b]] for b in idx] for a in idx]
    unit = None if G.unit is None else pos[G.unit]
    return structure(G.variety, order, t1, t2, unit)


def symmetric(n):
    if n == 3:
        return symmetric3()
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return permutation_group(gens, n)


def alternating4():
    return permutation_group([(1, 2, 0, 3), (0, 2, 3, 1)], 4)


def dihedral(n):
    """Symmetries of the regular n-gon (order 2n); dihedral(4) is D4 of order 8."""
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    if n == 2:
        return direct_product(cyclic(2), cyclic(2))
    return permutation_group([r, s], n)


def quaternion():
    """Q8 as {+-1, +-i, +-j, +-k}."""
    base = ["1", "i", "j", "k"]
    # unit quaternion products: (sign, basis)
    mult = {
        ("1", x): (1, x) for x in base
    }
    mult.update({(x, "1"): (1, x) for x in base})
    mult.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elems = [(s, b) for s in (1, -1) for b in base]
    names = [("" if s == 1 else "-") + b for s, b in elems]
    pos = {e: i for i, e in enumerate(elems)}
    table = []
    for s1, b1 in elems:
        row = []
        for s2, b2 in elems:
            s, b = mult[(b1, b2)]
            row.append(pos[(s * s1 * s2, b)])
        table.append(row)
    return _group(names, table)


def cyclic(n, variety="group"):
    names = ["e"] + [f"g{k}" for k in range(1, n)] if variety in ("group", "abelian-group") else [str(k) for k in range(n)]
    return _group(names, [[(a + b) % n for b in range(n)] for a in range(n)], variety)


def sign_c2():
    """C2 written multiplicatively as {1, -1}."""
    return _group(["1", "-1"], [[0, 1], [1, 0]])


def direct_product(A, B):
    return product(A, B)


def abelian(*orders, variety="abelian-group"):
    G = cyclic(orders[0], variety)
    for k in orders[1:]:
        G = product(G, cyclic(k, variety))
    return G


def sign_hom():
    S3 = symmetric3()
    C2 = sign_c2()
    odd = {"(12)", "(13)", "(23)"}
    return Hom(S3, C2, tuple(1 if n in odd else 0 for n in S3.elements))


# --- rings, Lie algebras, monoids ------------------------------------------


def heisenberg_f2():
    """Heisenberg Lie algebra over F2: basis x, y, z with [x,y] = z central."""
    vecs = list(iproduct((0, 1), repeat=3))  # (a, b, c) = a x + b y + c z
    def name(v):
        parts = [n for n, c in zip("xyz", v) if c]
        return "+".join(parts) or "0"
    pos = {v: i for i, v in enumerate(vecs)}
    add = [[pos[tuple((p + q) % 2 for p, q in zip(v, w))] for w in vecs] for v in vecs]
    br = [[pos[(0, 0, (v[0] * w[1] - v[1] * w[0]) % 2)] for w in vecs] for v in vecs]
    return structure("lie-fp(2)", [name(v) for v in vecs], add, br)


def upper_triangular_f2(unital=False):
    """2x2 upper triangular matrices [[a, b], [0, c]] over F2."""
    mats = list(iproduct((0, 1), repeat=3))  # (a, b, c)
    pos = {m: i for i, m in enumerate(mats)}
    def name(m):
        return f"[{m[0]}{m[1]};0{m[2]}]"
    add = [[pos[tuple((p + q) % 2 for p, q in zip(m, n))] for n in mats] for m in mats]
    def mul(m, n):
        a, b, c = m
        d, e, f = n
        return (a * d % 2, (a * e + b * f) % 2, c * f % 2)
    mult = [[pos[mul(m, n)] for n in mats] for m in mats]
    if unital:
        return structure("unital-ring", [name(m) for m in mats], add, mult, pos[(1, 0, 1)])
    return structure("ring", [name(m) for m in mats], add, mult)


def zmod_ring(n, unital=True):
    tag = "unital-ring" if unital else "ring"
    r = range(n)
    return structure(tag, [str(a) for a in r], [[(a + b) % n for b in r] for a in r],
                     [[(a * b) % n for b in r] for a in r], 1 % n if unital else None)


def semilattice2(variety="monoid"):
    """L = {0, 1} under max, neutral 0."""
    return structure(variety, ["0", "1"], [[0, 1], [1, 1]])


def saturating3():
    """{0, 1, 2} under a + b = min(a + b, 2)."""
    r = range(3)
    return structure("monoid", ["0", "1", "2"], [[min(a + b, 2) for b in r] for a in r])


def boolean_semiring():
    return structure("semiring", ["0", "1"], [[0, 1], [1, 1]], [[0, 0], [0, 1]])


# --- exhaustive small groups ----------------------------------------------


def _apply(m, x):
    return m[x]


def automorphisms(N: Structure):
    return [h.map for h in homomorphisms(N, N, injective=True)]


def _cyclic_extension(N: Structure, p, alpha, g0):
    n = len(N)
    powers = [tuple(range(n))]
    for _ in range(p - 1):
        prev = powers[-1]
        powers.append(tuple(alpha[prev[x]] for x in range(n)))
    elems = [(a, i) for i in range(p) for a in range(n)]
    pos = {e: k for k, e in enumerate(elems)}
    op = N.op1
    table = []
    for a, i in elems:
        row = []
        for b, j in elems:
            c = op[a][powers[i][b]]
            if i + j >= p:
                c = op[c][g0]
            row.append(pos[(c, (i + j) % p)])
        table.append(row)
    return table


def _table_struct(table):
    n = len(table)
    neutral = next(e for e in range(n) if all(table[e][x] == x for x in range(n)))
    inv = tuple(next(b for b in range(n) if table[a][b] == neutral) for a in range(n))
    names = ["e" if a == neutral else f"g{a}" for a in range(n)]
    return Structure(GROUP, tuple(names), tuple(tuple(r) for r in table), None, neutral, None, inv)


def _elem_order(G, a):
    k, x = 1, a
    while x != G.neutral:
        x = G.op1[x][a]
        k += 1
    return k


def group_invariant(G: Structure):
    n = len(G)
    r = range(n)
    orders = [_elem_order(G, a) for a in r]
    cent = [sum(1 for b in r if G.op1[a][b] == G.op1[b][a]) for a in r]
    center = [a for a in r if cent[a] == n]
    comm = closure(G, {G.op1[G.op1[a][b]][G.op1[G.inverses[a]][G.inverses[b]]] for a in r for b in r})
    sq = [G.op1[a][a] for a in r]
    roots = [sq.count(a) for a in r]
    profile = sorted(zip(orders, cent, roots, (orders[sq[a]] for a in r)))
    return (n, tuple(profile), len(center), len(comm),
            tuple(sorted(orders[a] for a in center)), tuple(sorted(orders[a] for a in comm)))


def is_isomorphic(G: Structure, H: Structure) -> bool:
    if len(G) != len(H) or group_invariant(G) != group_invariant(H):
        return False
    gens = generators(G)
    go = [_elem_order(G, g) for g in gens]
    ho = [_elem_order(H, h) for h in range(len(H))]
    cands = [[h for h in range(len(H)) if ho[h] == o] for o in go]
    from .algebra import _extend
    for images in iproduct(*cands):
        m = _extend(G, H, gens, images)
        if m is not None and len(set(m)) == len(H):
            return True
    return False


@lru_cache(maxsize=None)
def groups_of_order(n):
    """One representative per isomorphism class of groups of order n (n <= 24)."""
    if n == 1:
        return (_table_struct([[0]]),)
    found = []
    buckets = {}
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p))]
    for p in primes:
        for N in groups_of_order(n // p):
            auts = automorphisms(N)
            inner = {}
            for g in range(len(N)):
                inner[tuple(N.op1[N.op1[g][x]][N.inverses[g]] for x in range(len(N)))] = inner.get(
                    tuple(N.op1[N.op1[g][x]][N.inverses[g]] for x in range(len(N))), []) + [g]
            for alpha in auts:
                ap = tuple(range(len(N)))
                for _ in range(p):
                    ap = tuple(alpha[ap[x]] for x in range(len(N)))
                for g0 in inner.get(ap, []):
                    if alpha[g0] != g0:
                        continue
                    G = _table_struct(_cyclic_extension(N, p, alpha, g0))
                    key = group_invariant(G)
                    bucket = buckets.setdefault(key, [])
                    if any(is_isomorphic(G, H) for H in bucket):
                        continue
                    bucket.append(G)
                    found.append(G)
    found.sort(key=group_invariant)
    return tuple(found)


def all_groups(max_order):
    return [G for n in range(1, max_order + 1) for G in groups_of_order(n)]


def as_abelian(G: Structure) -> Structure:
    return structure("abelian-group", G.elements, [list(r) for r in G.op1])


def is_abelian(G: Structure):
    r = range(len(G))
    return all(G.op1[a][b] == G.op1[b][a] for a in r for b in r)


# --- exhaustive small monoids ----------------------------------------------


@lru_cache(maxsize=None)
def monoids_of_order(n):
    """One representative per isomorphism class of monoids of order n, neutral 0."""
    if n == 1:
        return (structure("monoid", ["e"], [[0]]),)
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    table = [[j if i == 0 else (i if j == 0 else None) for j in range(n)] for i in range(n)]
    results = set()

    def consistent():
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                if ab is None:
                    continue
                for c in range(n):
                    bc = table[b][c]
                    if bc is None:
                        continue
                    l, r = table[ab][c], table[a][bc]
                    if l is not None and r is not None and l != r:
                        return False
        return True

    def rec(k):
        if k == len(cells):
            results.add(_canonical_monoid(table, n))
            return
        i, j = cells[k]
        for v in range(n):
            table[i][j] = v
            if consistent():
                rec(k + 1)
        table[i][j] = None

    rec(0)
    out = []
    for t in sorted(results):
        names = ["e"] + [f"m{k}" for k in range(1, n)]
        out.append(structure("monoid", names, [list(r) for r in t]))
    return tuple(out)


def _canonical_monoid(table, n):
    best = None
    for perm in permutations(range(1, n)):
        p = (0,) + perm  # old -> new
        inv = [0] * n
        for old, new in enumerate(p):
            inv[new] = old
        t = tuple(tuple(p[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or t < best:
            best = t
    return best
