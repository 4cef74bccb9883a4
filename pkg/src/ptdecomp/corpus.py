"""Deterministic instance corpora for the property and acceptance suites."""
from __future__ import annotations

import random
from itertools import product as iproduct

from .algebra import Hom, Structure, Sub, homomorphisms, subalgebras, validate_structure
from .catalog import all_groups, monoids_of_order
from .errors import NotSchreier
from .groupoids import (
    connected_groupoid,
    discrete_groupoid_gp,
    disjoint_union,
    make_internal_mono,
    nabla_groupoid_gp,
)
from .points import Point, sub_point


def normal_subgroups(G: Structure):
    out = []
    for S in subalgebras(G):
        if all(G.op1[G.op1[g][k]][G.inverses[g]] in S for g in range(len(G)) for k in S):
            out.append(tuple(sorted(S)))
    return out


def split_points(X: Structure):
    """Every point X -> H (H a complement of a normal K), split by the inclusion of H."""
    subs = [tuple(sorted(S)) for S in subalgebras(X)]
    n = len(X)
    points = []
    for K in normal_subgroups(X):
        for H in subs:
            if len(H) * len(K) != n or set(H) & set(K) != {X.neutral}:
                continue
            Hs = Sub(X, H)
            # x = k h with unique h
            f = [None] * n
            for k in K:
                for i, h in enumerate(H):
                    f[X.op1[k][h]] = i
            points.append(Point(Hom(X, Hs.as_structure, tuple(f)), Hs.inclusion))
    return points


def sub_monos(P: Point, schreier=False):
    """Inclusions of every sub-point (Y' <= Y, s(Y') <= X' <= f^-1(Y'))."""
    from .decomp import schreier_retraction
    X, Y, f, s = P.X, P.Y, P.f.map, P.s.map
    for Yp in subalgebras(Y):
        within = [a for a in range(len(X)) if f[a] in Yp]
        for Xp in subalgebras(X, base=[s[b] for b in Yp], within=within):
            Q, m = sub_point(P, Sub(Y, tuple(sorted(Yp))), Sub(X, tuple(sorted(Xp))))
            if schreier:
                try:
                    schreier_retraction(Q)
                except NotSchreier:
                    continue
            yield m


def group_mono_corpus(max_order=12, cap=500):
    """PtMonos over groups with |X| <= max_order, first `cap` in generation order.

    Order: by |X|, then group, then point, then (Y', X') lexicographically.
    """
    out = []
    for X in all_groups(max_order):
        for P in split_points(X):
            for m in sub_monos(P):
                out.append(m)
                if len(out) >= cap:
                    return out
    return out


def stability_corpus(monos, count=120, seed=0, max_base=6):
    """(m, h) pairs with h: Y'' -> Y an arbitrary homomorphism from a small group."""
    rng = random.Random(seed)
    sources = all_groups(max_base)
    pairs = []
    pool = [m for m in monos if len(m.dst.Y) > 1]
    while len(pairs) < count:
        m = rng.choice(pool)
        Ypp = rng.choice(sources)
        homs = homomorphisms(Ypp, m.dst.Y)
        pairs.append((m, rng.choice(homs)))
    return pairs


# --- monoids ---------------------------------------------------------------------


def _endomorphisms(K):
    return [h.map for h in homomorphisms(K, K)]


def monoid_actions(Y: Structure, K: Structure):
    """Monoid homs Y -> End(K) (composition), as tuples of endomaps."""
    ends = _endomorphisms(K)
    ident = tuple(range(len(K)))
    others = [y for y in range(len(Y)) if y != Y.neutral]
    out = []
    for choice in iproduct(ends, repeat=len(others)):
        phi = {Y.neutral: ident, **dict(zip(others, choice))}
        if all(phi[Y.op1[a][b]] == tuple(phi[a][phi[b][k]] for k in range(len(K)))
               for a in range(len(Y)) for b in range(len(Y))):
            out.append(tuple(phi[y] for y in range(len(Y))))
    return out


def semidirect_point(K: Structure, Y: Structure, phi) -> Point:
    """K x| Y with (k, y)(k', y') = (k phi_y(k'), y y'); projection to Y, s(y) = (e, y)."""
    nY = len(Y)
    idx = [(k, y) for k in range(len(K)) for y in range(nY)]
    op = [[(K.op1[k][phi[y][k2]]) * nY + Y.op1[y][y2] for (k2, y2) in idx] for (k, y) in idx]
    X = validate_structure({
        "variety": str(K.variety),
        "elements": [f"({K.elements[k]},{Y.elements[y]})" for k, y in idx],
        "op1": op,
    })
    f = Hom(X, Y, tuple(y for _, y in idx))
    s = Hom(Y, X, tuple(K.neutral * nY + y for y in range(nY)))
    return Point(f, s)


def monoid_schreier_points(max_total=8, max_factor=4):
    """Semidirect-product points K x| Y with |K||Y| <= max_total, factors up to max_factor."""
    monoids = {n: monoids_of_order(n) for n in range(1, max_factor + 1)}
    out = []
    for nk in range(1, max_factor + 1):
        for ny in range(1, max_factor + 1):
            if nk * ny > max_total or nk * ny == 1:
                continue
            for K in monoids[nk]:
                for Y in monoids[ny]:
                    for phi in monoid_actions(Y, K):
                        out.append(semidirect_point(K, Y, phi))
    return out


def monoid_mono_corpus(max_total=8, max_factor=4, cap=None):
    out = []
    for P in monoid_schreier_points(max_total, max_factor):
        for m in sub_monos(P, schreier=True):
            out.append(m)
            if cap is not None and len(out) >= cap:
                return out
    return out


# --- groupoids ---------------------------------------------------------------------


def _partitions_up_to(k):
    """Object-count partitions of 1..k objects into connected components."""
    if k == 0:
        return [()]
    out = []

    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, acc + [p])

    for n in range(1, k + 1):
        rec(n, n, [])
    return out


def groupoid_corpus(max_objects=3, max_arrows=24):
    """One groupoid per isomorphism class: disjoint unions of G x nabla(k) components."""
    groups = all_groups(max_arrows)
    out = []
    for parts in _partitions_up_to(max_objects):
        # components with equal object counts are unordered: choose groups non-decreasingly
        def rec(i, prev, acc, arrows):
            if i == len(parts):
                comps = [connected_groupoid(G, tuple(str(j) for j in range(k))) for k, G in acc]
                G = comps[0] if len(comps) == 1 else disjoint_union(*comps)
                out.append(G)
                return
            k = parts[i]
            start = prev if i > 0 and parts[i - 1] == k else 0
            for gi in range(start, len(groups)):
                G = groups[gi]
                a = arrows + len(G) * k * k
                if a > max_arrows:
                    continue
                rec(i + 1, gi, acc + [(k, G)], a)

        rec(0, 0, [], 0)
    return out


# --- internal groupoids in groups ------------------------------------------------------


def internal_corpus(max_order=12):
    """Monos between nabla- and discrete groupoids induced by every subgroup U <= G."""
    out = []
    for G in all_groups(max_order):
        nG, dG = nabla_groupoid_gp(G), discrete_groupoid_gp(G)
        n = len(G)
        for U in subalgebras(G):
            inc = tuple(sorted(U))
            Us = Sub(G, inc).as_structure
            nU, dU = nabla_groupoid_gp(Us), discrete_groupoid_gp(Us)
            k = len(inc)
            nab = [inc[a] * n + inc[b] for a in range(k) for b in range(k)]
            out.append(make_internal_mono(nU, nG, nab, inc))
            out.append(make_internal_mono(dU, nG, [c * n + c for c in inc], inc))
            out.append(make_internal_mono(dU, dG, inc, inc))
    return out
