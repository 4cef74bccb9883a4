"""Finite groupoids over a fixed object set, and internal groupoids in groups.

Conventions: ``comp[g][f]`` is g . f, defined iff tgt f = src g (else -1).
For internal groupoids, d2(phi, psi) = psi . phi^-1 on pairs with a common
source.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import Hom, Structure, compose, diagonal, identity, product, projections, validate_hom
from .decomp import Decomposition, extremal_decompose
from .errors import (
    AxiomViolation,
    BadTable,
    InternalAssertion,
    NotEquivalence,
    NotHomomorphism,
    NotMono,
    SimplicialViolation,
    VarietyMismatch,
)
from .points import Point, is_cartesian, make_pt_mono


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: tuple
    arrows: tuple
    src: tuple
    tgt: tuple
    comp: tuple
    inv: tuple
    ids: tuple

    def __repr__(self):
        return f"<FiniteGroupoid {len(self.objects)} objects, {len(self.arrows)} arrows>"

    def __hash__(self):
        return hash((self.objects, self.arrows))

    @cached_property
    def endos(self):
        out = {o: [] for o in range(len(self.objects))}
        for a in range(len(self.arrows)):
            if self.src[a] == self.tgt[a]:
                out[self.src[a]].append(a)
        return out

    def conj(self, phi, tau):
        """phi . tau . phi^-1"""
        return self.comp[self.comp[phi][tau]][self.inv[phi]]


def make_groupoid(objects, arrows, comp_triples, inv, ids) -> FiniteGroupoid:
    """arrows: (name, src, tgt) with object indices; comp_triples: (g, f, g.f)."""
    objects = tuple(objects)
    n = len(arrows)
    if len({a[0] for a in arrows}) != n:
        raise BadTable("arrow names must be distinct")
    names = tuple(a[0] for a in arrows)
    src = tuple(a[1] for a in arrows)
    tgt = tuple(a[2] for a in arrows)
    for o in src + tgt:
        if not 0 <= o < len(objects):
            raise BadTable(f"object index {o!r} out of range")
    for a in tuple(inv) + tuple(ids):
        if not 0 <= a < n:
            raise BadTable(f"arrow index {a!r} out of range")
    table = [[-1] * n for _ in range(n)]
    for g, f, k in comp_triples:
        if tgt[f] != src[g]:
            raise AxiomViolation("composable", (names[g], names[f]))
        if table[g][f] not in (-1, k):
            raise AxiomViolation("composition is a function", (names[g], names[f]))
        table[g][f] = k
    G = FiniteGroupoid(objects, names, src, tgt, tuple(map(tuple, table)), tuple(inv), tuple(ids))
    validate_groupoid(G)
    return G


def validate_groupoid(G: FiniteGroupoid):
    n = len(G.arrows)
    nm = G.arrows
    if len(G.inv) != n or len(G.ids) != len(G.objects):
        raise BadTable("inv/ids have the wrong length")
    for o, i in enumerate(G.ids):
        if G.src[i] != o or G.tgt[i] != o:
            raise AxiomViolation("identity endpoints", (G.objects[o],))
    for g in range(n):
        for f in range(n):
            k = G.comp[g][f]
            if (G.tgt[f] == G.src[g]) != (k != -1):
                raise AxiomViolation("composition defined exactly on composable pairs", (nm[g], nm[f]))
            if k != -1 and (G.src[k] != G.src[f] or G.tgt[k] != G.tgt[g]):
                raise AxiomViolation("composite endpoints", (nm[g], nm[f]))
    for f in range(n):
        if G.comp[G.ids[G.tgt[f]]][f] != f or G.comp[f][G.ids[G.src[f]]] != f:
            raise AxiomViolation("identity law", (nm[f],))
        i = G.inv[f]
        if G.comp[i][f] != G.ids[G.src[f]] or G.comp[f][i] != G.ids[G.tgt[f]]:
            raise AxiomViolation("inverse", (nm[f],))
    for h in range(n):
        for g in range(n):
            hg = G.comp[h][g]
            if hg == -1:
                continue
            for f in range(n):
                gf = G.comp[g][f]
                if gf != -1 and G.comp[hg][f] != G.comp[h][gf]:
                    raise AxiomViolation("associativity", (nm[h], nm[g], nm[f]))
    return G


def groupoid_to_dict(G: FiniteGroupoid) -> dict:
    triples = [[g, f, G.comp[g][f]] for g in range(len(G.arrows)) for f in range(len(G.arrows))
               if G.comp[g][f] != -1]
    return {
        "objects": list(G.objects),
        "arrows": [{"name": n, "src": s, "tgt": t} for n, s, t in zip(G.arrows, G.src, G.tgt)],
        "comp": triples,
        "inv": list(G.inv),
        "ids": list(G.ids),
    }


def connected_groupoid(Gp: Structure, objects) -> FiniteGroupoid:
    """Gp x nabla(objects): arrows (g, i -> j), (h, j -> k) . (g, i -> j) = (h g, i -> k)."""
    objs = tuple(objects)
    k = len(objs)
    arrows, index = [], {}
    for g in range(len(Gp)):
        for i in range(k):
            for j in range(k):
                name = Gp.elements[g] if k == 1 else f"{Gp.elements[g]}:{objs[i]}->{objs[j]}"
                index[(g, i, j)] = len(arrows)
                arrows.append((name, i, j))
    triples = []
    for (h, j, l), a in index.items():
        for (g, i, j2), b in index.items():
            if j2 == j:
                triples.append((a, b, index[(Gp.op1[h][g], i, l)]))
    inv = [index[(Gp.inverses[g], j, i)] for (g, i, j) in index]
    ids = [index[(Gp.neutral, i, i)] for i in range(k)]
    return make_groupoid(objs, arrows, triples, inv, ids)


def group_groupoid(Gp: Structure) -> FiniteGroupoid:
    return connected_groupoid(Gp, ("*",))


def disjoint_union(*parts: FiniteGroupoid) -> FiniteGroupoid:
    objects, arrows, triples, inv, ids = [], [], [], [], []
    for p, G in enumerate(parts):
        o0, a0 = len(objects), len(arrows)
        objects.extend(f"{o}#{p}" for o in G.objects)
        arrows.extend((f"{n}#{p}", G.src[a] + o0, G.tgt[a] + o0) for a, n in enumerate(G.arrows))
        n = len(G.arrows)
        triples.extend((g + a0, f + a0, G.comp[g][f] + a0) for g in range(n) for f in range(n)
                       if G.comp[g][f] != -1)
        inv.extend(i + a0 for i in G.inv)
        ids.extend(i + a0 for i in G.ids)
    return make_groupoid(objects, arrows, triples, inv, ids)


def equivalence_relation_as_groupoid(R) -> FiniteGroupoid:
    """Objects: base elements; arrows: pairs (a, b) as a -> b; (b, c) . (a, b) = (a, c)."""
    if not R.is_equivalence:
        raise NotEquivalence("relation is not an equivalence relation")
    X = R.base
    pairs = R.sorted_pairs()
    index = {p: i for i, p in enumerate(pairs)}
    arrows = [(f"({X.elements[a]},{X.elements[b]})", a, b) for a, b in pairs]
    triples = [(index[(b, c)], index[(a, b)], index[(a, c)])
               for (a, b) in pairs for (b2, c) in pairs if b2 == b]
    inv = [index[(b, a)] for a, b in pairs]
    ids = [index[(a, a)] for a in range(len(X))]
    return make_groupoid(X.elements, arrows, triples, inv, ids)


@dataclass(frozen=True)
class GroupoidFunctor:
    src: FiniteGroupoid
    dst: FiniteGroupoid
    F0: tuple
    F1: tuple


def make_functor(src: FiniteGroupoid, dst: FiniteGroupoid, F0, F1) -> GroupoidFunctor:
    F0, F1 = tuple(F0), tuple(F1)
    if len(F0) != len(src.objects) or len(F1) != len(src.arrows):
        raise BadTable("functor maps have the wrong length")
    for a in range(len(src.arrows)):
        if dst.src[F1[a]] != F0[src.src[a]] or dst.tgt[F1[a]] != F0[src.tgt[a]]:
            raise NotHomomorphism("endpoints", (src.arrows[a],))
    for o, i in enumerate(src.ids):
        if F1[i] != dst.ids[F0[o]]:
            raise NotHomomorphism("identities", (src.objects[o],))
    n = len(src.arrows)
    for g in range(n):
        for f in range(n):
            k = src.comp[g][f]
            if k != -1 and F1[k] != dst.comp[F1[g]][F1[f]]:
                raise NotHomomorphism("composition", (src.arrows[g], src.arrows[f]))
    return GroupoidFunctor(src, dst, F0, F1)


def identity_functor(G: FiniteGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(G, G, tuple(range(len(G.objects))), tuple(range(len(G.arrows))))


def is_discrete_fibration(F: GroupoidFunctor) -> bool:
    """Each arrow of dst out of F0(a) lifts to exactly one arrow of src out of a."""
    U, T = F.src, F.dst
    out = {}
    for phi in range(len(U.arrows)):
        out.setdefault(U.src[phi], []).append(F.F1[phi])
    for a in range(len(U.objects)):
        lifted = out.get(a, [])
        if len(lifted) != len(set(lifted)):
            return False
        wanted = {t for t in range(len(T.arrows)) if T.src[t] == F.F0[a]}
        if set(lifted) != wanted:
            return False
    return True


# --- wide subgroupoids in the fiber over a fixed object set ---------------


@dataclass(frozen=True)
class WideSubgroupoid:
    parent: FiniteGroupoid
    arrowset: frozenset

    def __repr__(self):
        return f"<WideSubgroupoid with {len(self.arrowset)} of {len(self.parent.arrows)} arrows>"

    def sorted_arrows(self):
        return sorted(self.arrowset)


def wide_closure_defect(G: FiniteGroupoid, arrows):
    S = set(arrows)
    for i in G.ids:
        if i not in S:
            return ("identity", (G.arrows[i],))
    for f in S:
        if G.inv[f] not in S:
            return ("inverse", (G.arrows[f],))
        for g in S:
            k = G.comp[g][f]
            if k != -1 and k not in S:
                return ("composition", (G.arrows[g], G.arrows[f]))
    return None


def make_wide(G: FiniteGroupoid, arrows) -> WideSubgroupoid:
    bad = wide_closure_defect(G, arrows)
    if bad is not None:
        raise AxiomViolation(f"wide subgroupoid {bad[0]}", bad[1])
    return WideSubgroupoid(G, frozenset(arrows))


def _normal_in(G: FiniteGroupoid, U, X) -> bool:
    for phi in X:
        y = G.src[phi]
        for tau in G.endos[y]:
            if tau in U and G.conj(phi, tau) not in U:
                return False
    return True


def grd_y_is_normal(U: WideSubgroupoid, within: WideSubgroupoid | None = None) -> bool:
    """phi tau phi^-1 in U for every arrow phi: y -> y' (of within) and endo tau of y in U."""
    X = range(len(U.parent.arrows)) if within is None else within.arrowset
    return _normal_in(U.parent, U.arrowset, X)


def grd_y_normalizer(U: WideSubgroupoid, budget=0) -> WideSubgroupoid:
    """Arrows phi: y -> y' conjugating U-endos of y into U and U-endos of y' back into U.

    With budget >= number of arrows, maximality is also checked by brute force.
    """
    T = U.parent
    Us = U.arrowset
    uend = {o: [t for t in T.endos[o] if t in Us] for o in T.endos}
    X = set()
    for phi in range(len(T.arrows)):
        pinv = T.inv[phi]
        if all(T.conj(phi, t) in Us for t in uend[T.src[phi]]) and \
                all(T.conj(pinv, t) in Us for t in uend[T.tgt[phi]]):
            X.add(phi)
    if wide_closure_defect(T, X) is not None:
        raise InternalAssertion("normalizer arrows do not form a wide subgroupoid")
    if not Us <= X or not _normal_in(T, Us, X):
        raise InternalAssertion("U is not normal in its computed normalizer")
    N = WideSubgroupoid(T, frozenset(X))
    if budget >= len(T.arrows):
        from .oracle import brute_grd_normalizer
        if brute_grd_normalizer(U).arrowset != N.arrowset:
            raise InternalAssertion("normalizer is not the largest normalizing subgroupoid")
    return N


# --- internal groupoids in groups ------------------------------------------


def kernel_pair(f: Hom) -> tuple:
    """R[f] as pairs (a, b) with f(a) = f(b), in lexicographic order."""
    n = len(f.src)
    return tuple((a, b) for a in range(n) for b in range(n) if f.map[a] == f.map[b])


def _pair_generators(G: Structure, pairs, index):
    """Generators of the subgroup `pairs` of G x G, operations computed on the fly."""
    op = G.op1
    e = (G.neutral, G.neutral)
    current, gens = {e}, []
    for p in pairs:
        if p in current:
            continue
        gens.append(p)
        frontier = list(current)
        current.add(p)
        frontier.append(p)
        while frontier:
            a, b = frontier.pop()
            for c, d in gens:
                q = (op[a][c], op[b][d])
                if q not in current:
                    current.add(q)
                    frontier.append(q)
    return gens


@dataclass(frozen=True)
class InternalGroupoidInGp:
    G1: Structure
    G0: Structure
    d0: Hom
    d1: Hom
    s0: Hom
    kp: tuple  # R[d0] as lexicographically ordered pairs of G1
    d2: tuple  # kp position -> G1

    def __repr__(self):
        return f"<InternalGroupoidInGp |G1|={len(self.G1)} |G0|={len(self.G0)}>"

    def __hash__(self):
        return hash((self.G1, self.G0, self.d0.map, self.d1.map))

    @cached_property
    def kp_index(self):
        return {p: i for i, p in enumerate(self.kp)}

    def d2_of(self, a, b):
        return self.d2[self.kp_index[(a, b)]]

    @cached_property
    def points(self) -> Point:
        return Point(self.d0, self.s0)

    def kernel_pair_structure(self) -> Structure:
        """R[d0] tabulated as a group (quadratic in |kp|; small instances only)."""
        G, idx = self.G1, self.kp_index
        op = G.op1
        table = tuple(tuple(idx[(op[a][c], op[b][d])] for c, d in self.kp) for a, b in self.kp)
        inverses = tuple(idx[(G.inverses[a], G.inverses[b])] for a, b in self.kp)
        names = tuple(f"({G.elements[a]},{G.elements[b]})" for a, b in self.kp)
        return Structure(G.variety, names, table, None, idx[(G.neutral, G.neutral)], None, inverses)

    def as_finite_groupoid(self) -> FiniteGroupoid:
        n = len(self.G1)
        comp = [[-1] * n for _ in range(n)]
        for (f, psi), g in zip(self.kp, self.d2):
            comp[g][f] = psi
        inv = tuple(self.d2_of(f, self.s0.map[self.d0.map[f]]) for f in range(n))
        G = FiniteGroupoid(self.G0.elements, self.G1.elements, self.d0.map, self.d1.map,
                           tuple(map(tuple, comp)), inv, self.s0.map)
        return validate_groupoid(G)


def _check_d2_hom(G1, kp, index, d2):
    """d2 preserves the neutral pair and products g.x for generators g of R[d0]."""
    op, nm = G1.op1, G1.elements
    e = G1.neutral
    if d2[index[(e, e)]] != e:
        raise NotHomomorphism("neutral", ())
    for g in _pair_generators(G1, kp, index):
        dg = d2[index[g]]
        for x in kp:
            gx = (op[g[0]][x[0]], op[g[1]][x[1]])
            if d2[index[gx]] != op[dg][d2[index[x]]]:
                raise NotHomomorphism("op1", (f"({nm[g[0]]},{nm[g[1]]})", f"({nm[x[0]]},{nm[x[1]]})"))


def internal_groupoid_gp(G1: Structure, G0: Structure, d0, d1, s0, d2) -> InternalGroupoidInGp:
    """Validate the data and every simplicial identity by enumeration.

    d2 is a list indexed by the lexicographic enumeration of R[d0].
    """
    if G1.variety.tag not in ("group", "abelian-group") or G0.variety != G1.variety:
        raise VarietyMismatch("internal groupoids are only supported in groups")
    d0 = d0 if isinstance(d0, Hom) else validate_hom(d0, G1, G0)
    d1 = d1 if isinstance(d1, Hom) else validate_hom(d1, G1, G0)
    s0 = s0 if isinstance(s0, Hom) else validate_hom(s0, G0, G1)
    kp = kernel_pair(d0)
    d2 = tuple(d2.map if isinstance(d2, Hom) else d2)
    if len(d2) != len(kp) or any(not isinstance(c, int) or not 0 <= c < len(G1) for c in d2):
        raise BadTable(f"d2 must list {len(kp)} indices into G1")
    g = InternalGroupoidInGp(G1, G0, d0, d1, s0, kp, d2)
    _check_d2_hom(G1, kp, g.kp_index, d2)
    nm, n = G1.elements, len(G1)
    for y in range(len(G0)):
        if d0.map[s0.map[y]] != y:
            raise SimplicialViolation("d0.s0 = 1", G0.elements[y])
        if d1.map[s0.map[y]] != y:
            raise SimplicialViolation("d1.s0 = 1", G0.elements[y])
    for (a, b), c in zip(kp, d2):
        if d0.map[c] != d1.map[a]:
            raise SimplicialViolation("d0.d2 = d1.p0", (nm[a], nm[b]))
        if d1.map[c] != d1.map[b]:
            raise SimplicialViolation("d1.d2 = d1.p1", (nm[a], nm[b]))
    for a in range(n):
        if g.d2_of(a, a) != s0.map[d1.map[a]]:
            raise SimplicialViolation("d2.s0 = s0.d1", nm[a])
        if g.d2_of(s0.map[d0.map[a]], a) != a:
            raise SimplicialViolation("d2.(s0.d0, 1) = 1", nm[a])
    by_src = {}
    for a in range(n):
        by_src.setdefault(d0.map[a], []).append(a)
    for fiber in by_src.values():
        for a in fiber:
            for b in fiber:
                ab = g.d2_of(a, b)
                for c in fiber:
                    if g.d2_of(ab, g.d2_of(a, c)) != g.d2_of(b, c):
                        raise SimplicialViolation("d2.R(d2) = d2.(p1, p2)", (nm[a], nm[b], nm[c]))
    return g


def internal_groupoid_to_dict(g: InternalGroupoidInGp) -> dict:
    from .algebra import structure_to_dict
    return {
        "G1": structure_to_dict(g.G1),
        "G0": structure_to_dict(g.G0),
        "d0": list(g.d0.map),
        "d1": list(g.d1.map),
        "s0": list(g.s0.map),
        "d2": list(g.d2),
    }


def nabla_groupoid_gp(G: Structure) -> InternalGroupoidInGp:
    GG = product(G, G)
    p0, p1 = projections(G, G, GG)
    n = len(G)
    # ((a, b), (a, c)) -> (b, c)
    d2 = [(x % n) * n + (y % n) for x, y in kernel_pair(p0)]
    return internal_groupoid_gp(GG, G, p0, p1, diagonal(G, GG), d2)


def discrete_groupoid_gp(G: Structure) -> InternalGroupoidInGp:
    ident = identity(G)
    return internal_groupoid_gp(G, G, ident, ident, ident, [a for a, _ in kernel_pair(ident)])


@dataclass(frozen=True)
class InternalGroupoidMono:
    src: InternalGroupoidInGp
    dst: InternalGroupoidInGp
    m1: Hom
    m0: Hom


def make_internal_mono(src, dst, m1, m0) -> InternalGroupoidMono:
    m1 = m1 if isinstance(m1, Hom) else validate_hom(m1, src.G1, dst.G1)
    m0 = m0 if isinstance(m0, Hom) else validate_hom(m0, src.G0, dst.G0)
    if not m1.injective or not m0.injective:
        raise NotMono("m1" if not m1.injective else "m0")
    for d in ("d0", "d1"):
        if compose(getattr(dst, d), m1) != compose(m0, getattr(src, d)):
            raise NotHomomorphism(f"commutes with {d}", ())
    if compose(dst.s0, m0) != compose(m1, src.s0):
        raise NotHomomorphism("commutes with s0", ())
    for (a, b), c in zip(src.kp, src.d2):
        if m1.map[c] != dst.d2_of(m1.map[a], m1.map[b]):
            raise NotHomomorphism("commutes with d2", (src.G1.elements[a], src.G1.elements[b]))
    return InternalGroupoidMono(src, dst, m1, m0)


def identity_internal_mono(g: InternalGroupoidInGp) -> InternalGroupoidMono:
    return InternalGroupoidMono(g, g, identity(g.G1), identity(g.G0))


def internal_mono_as_functor(m: InternalGroupoidMono) -> GroupoidFunctor:
    return make_functor(m.src.as_finite_groupoid(), m.dst.as_finite_groupoid(), m.m0.map, m.m1.map)


@dataclass(frozen=True)
class DiFDecomposition:
    u: InternalGroupoidMono
    mid: InternalGroupoidInGp
    w: InternalGroupoidMono
    points: Decomposition


def dif_decompose_internal_gp(m: InternalGroupoidMono) -> DiFDecomposition:
    """Decompose the underlying (d0, s0)-points and lift d1, d2 to the middle."""
    src, dst = m.src, m.dst
    pm = make_pt_mono(m.m0, m.m1, src.points, dst.points)
    D = extremal_decompose(pm)
    X1, X0 = D.xsub, D.ysub
    for a in X1.members:
        if dst.d1.map[a] not in X0:
            raise InternalAssertion("d1 does not restrict to the middle carrier")
    d1 = Hom(X1.as_structure, X0.as_structure, tuple(X0.position(dst.d1.map[a]) for a in X1.members))
    mid_d0, mid_s0 = D.mid.f, D.mid.s
    d2 = []
    for a, b in kernel_pair(mid_d0):
        c = dst.d2_of(X1.members[a], X1.members[b])
        if c not in X1:
            raise InternalAssertion("d2 does not restrict to the middle carrier")
        d2.append(X1.position(c))
    try:
        mid = internal_groupoid_gp(X1.as_structure, X0.as_structure, mid_d0, d1, mid_s0, d2)
        u = make_internal_mono(src, mid, D.u.x, D.u.y)
        w = make_internal_mono(mid, dst, D.w.x, D.w.y)
    except (SimplicialViolation, NotHomomorphism) as exc:
        raise InternalAssertion(f"lifted groupoid structure fails: {exc}") from exc
    if not is_cartesian(D.u):
        raise InternalAssertion("u is not fibrant at d0")
    im0 = u.m0.image
    if {a for a in range(len(X1)) if mid.d1.map[a] in im0} != u.m1.image:
        raise InternalAssertion("u is not fibrant at d1")
    return DiFDecomposition(u, mid, w, D)
