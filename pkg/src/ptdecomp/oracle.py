"""Brute-force verification, kept independent of the constructive formulas.

Nothing here calls the decomposition formulas.  Alternatives are enumerated
literally, in lexicographic order of sorted member tuples, so certificates
are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Hom, Structure, Sub, is_closed, product, subalgebras
from .errors import BudgetExceeded, InternalAssertion, NotCommuting, NotSchreier, VarietyMismatch
from .formats import decomposition_to_dict, digest, pt_mono_to_dict, relation_to_dict
from .normalizers import RelationSub, is_normal, make_relation
from .points import PtMono, sub_point

DEFAULT_BUDGET = 16
CONGRUENCE_BUDGET = 8


@dataclass(frozen=True)
class Certificate:
    claim: str
    digest: str
    alternatives_checked: int
    status: str  # verified | refuted | budget_exceeded
    witness: object = None
    details: dict = field(default_factory=dict)

    @property
    def verified(self):
        return self.status == "verified"

    def to_dict(self):
        d = {
            "claim": self.claim,
            "digest": self.digest,
            "alternatives_checked": self.alternatives_checked,
            "status": self.status,
            "witness": self.witness,
        }
        if self.details:
            d["details"] = self.details
        return d


# --- pullbacks -----------------------------------------------------------------


def verify_pullback(square) -> bool:
    """Is the comparison map into the fiber product bijective?

    square is a PtMono (its left square X' -> Y', X' -> X over Y) or a tuple
    (p, q, g, h) of homs with g.p = h.q: A -p-> B, A -q-> C, B -g-> D, C -h-> D.
    """
    if isinstance(square, PtMono):
        p, q, g, h = square.src.f, square.x, square.y, square.dst.f
    else:
        p, q, g, h = square
    if p.src != q.src or g.src != p.dst or h.src != q.dst or g.dst != h.dst:
        raise NotCommuting("square does not line up")
    for a in range(len(p.src)):
        if g.map[p.map[a]] != h.map[q.map[a]]:
            raise NotCommuting(f"square does not commute at {p.src.elements[a]}", p.src.elements[a])
    fiber = {(b, c) for b in range(len(p.dst)) for c in range(len(q.dst)) if g.map[b] == h.map[c]}
    comparison = [(p.map[a], q.map[a]) for a in range(len(p.src))]
    return len(set(comparison)) == len(comparison) and set(comparison) == fiber


# --- extremality -----------------------------------------------------------------


def _is_schreier(P) -> bool:
    from .decomp import schreier_retraction
    try:
        schreier_retraction(P)
    except NotSchreier:
        return False
    return True


def cartesian_alternatives(m: PtMono, schreier=False):
    """Every (Y'', X'') through which m factors as a cartesian mono then a mono.

    Y'' ranges over subalgebras of Y containing y(Y'), X'' over subalgebras of
    f^-1(Y'') containing x(X') and s(Y'') and meeting f^-1(y(Y')) exactly in
    x(X').  With schreier=True only Schreier intermediate points count.
    """
    P = m.dst
    X, Y, f, s = P.X, P.Y, P.f.map, P.s.map
    xim, yim = m.ximage, m.yimage
    over_yp = {a for a in range(len(X)) if f[a] in yim}
    forbidden = over_yp - xim
    for Ypp in subalgebras(Y, base=yim):
        within = [a for a in range(len(X)) if f[a] in Ypp]
        base = set(xim) | {s[b] for b in Ypp}
        for Xpp in subalgebras(X, base=base, within=within, forbidden=forbidden):
            if schreier:
                Q, _ = sub_point(P, Sub(Y, tuple(sorted(Ypp))), Sub(X, tuple(sorted(Xpp))))
                if not _is_schreier(Q):
                    continue
            yield tuple(sorted(Ypp)), tuple(sorted(Xpp))


def _decomposition_defect(m: PtMono, D):
    """None if D is a decomposition of m of the required shape, else a reason."""
    if D.m != m:
        return "decomposition belongs to another monomorphism"
    P = m.dst
    yb, xb = set(D.ybar), set(D.xbar)
    if is_closed(P.Y, yb) is not None or is_closed(P.X, xb) is not None:
        return "middle carriers are not subalgebras"
    if any(P.f.map[a] not in yb for a in xb) or any(P.s.map[b] not in xb for b in yb):
        return "middle carriers do not form a point"
    if not m.yimage <= yb or not m.ximage <= xb:
        return "m does not factor through the middle point"
    if {a for a in xb if P.f.map[a] in m.yimage} != set(m.ximage):
        return "first leg is not cartesian"
    return None


def _instance_digest(m, D=None):
    obj = {"m": pt_mono_to_dict(m)}
    if D is not None:
        obj["ybar"], obj["xbar"] = list(D.ybar), list(D.xbar)
    return digest(obj)


def verify_extremal(m: PtMono, D, budget=DEFAULT_BUDGET, schreier=None) -> Certificate:
    """Check that every cartesian-then-mono factorization of m factors uniquely through D."""
    if schreier is None:
        schreier = m.variety.schreier_path
    dig = _instance_digest(m, D)
    claim = "extremal"
    if len(m.dst.X) > budget:
        raise BudgetExceeded(0, f"|X| = {len(m.dst.X)} exceeds budget {budget}")
    bad = _decomposition_defect(m, D)
    if bad is not None:
        return Certificate(claim, dig, 0, "refuted", {"reason": bad})
    if schreier:
        Q, _ = sub_point(m.dst, Sub(m.dst.Y, D.ybar), Sub(m.dst.X, D.xbar))
        if not _is_schreier(Q):
            return Certificate(claim, dig, 0, "refuted", {"reason": "middle point is not Schreier"})
    yb, xb = set(D.ybar), set(D.xbar)
    count = 0
    for Ypp, Xpp in cartesian_alternatives(m, schreier):
        count += 1
        # w is injective, so t with w.t = w' exists iff the carriers nest, and is then unique
        if not (set(Ypp) <= yb and set(Xpp) <= xb):
            X, Y = m.dst.X, m.dst.Y
            return Certificate(claim, dig, count, "refuted", {
                "reason": "alternative does not factor through the middle point",
                "ybar": Y.names(Ypp), "xbar": X.names(Xpp),
            })
    return Certificate(claim, dig, count, "verified")


def find_cartesian_subdecomposition(m: PtMono, schreier=None):
    """First factorization m = w'.u' with u' cartesian and not an isomorphism, or None."""
    if schreier is None:
        schreier = m.variety.schreier_path
    for Ypp, Xpp in cartesian_alternatives(m, schreier):
        if len(Ypp) != len(m.yimage):
            return Ypp, Xpp
    return None


# --- classical normalizers ---------------------------------------------------------


def brute_normalizer(v: Hom):
    """(N, R): conjugation/product/bracket scan; R = right cosets of U inside N."""
    T = v.dst
    U = set(v.image)
    tag = T.variety.tag
    N = []
    for t in range(len(T)):
        if tag in ("group", "abelian-group"):
            ok = {T.op1[T.op1[t][u]][T.inverses[t]] for u in U} == U
        elif tag in ("ring", "unital-ring"):
            ok = all(T.op2[t][u] in U and T.op2[u][t] in U for u in U)
        elif tag == "lie-fp":
            ok = all(T.op2[t][u] in U for u in U)
        else:
            raise VarietyMismatch(f"no classical normalizer for {T.variety}")
        if ok:
            N.append(t)
    Nsub = Sub(T, tuple(N))
    NS = Nsub.as_structure
    pairs = [(i, j) for i, a in enumerate(N) for j, b in enumerate(N) if T.div(b, a) in U]
    return Nsub, make_relation(NS, pairs)


# --- Mal'tsev probe ---------------------------------------------------------------


def maltsev_probe(A: Structure, budget=None):
    """First reflexive subalgebra of A x A that is not an equivalence (lexicographic), or None."""
    if budget is not None and len(A) > budget:
        raise BudgetExceeded(0, f"|A| = {len(A)} exceeds budget {budget}")
    n = len(A)
    AA = product(A, A)
    diag = [a * n + a for a in range(n)]
    for S in subalgebras(AA, base=diag):
        R = RelationSub(A, Sub(AA, tuple(sorted(S))))
        if not R.is_equivalence:
            return R
    return None


# --- congruences -------------------------------------------------------------------


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, a):
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        self.p[max(a, b)] = min(a, b)
        return True

    def labels(self):
        return tuple(self.find(a) for a in range(len(self.p)))


def principal_congruence(A: Structure, a, b) -> tuple:
    """Partition labels of the congruence generated by (a, b)."""
    uf = _UF(len(A))
    ops = [A.op1] + ([A.op2] if A.op2 is not None else [])
    work = [(a, b)] if uf.union(a, b) else []
    while work:
        x, y = work.pop()
        nxt = []
        if A.inverses is not None:
            nxt.append((A.inverses[x], A.inverses[y]))
        for op in ops:
            for c in range(len(A)):
                nxt.append((op[x][c], op[y][c]))
                nxt.append((op[c][x], op[c][y]))
        for p, q in nxt:
            if uf.union(p, q):
                work.append((p, q))
    return uf.labels()


def _join(l1, l2):
    uf = _UF(len(l1))
    for a, r in enumerate(l1):
        uf.union(a, r)
    for a, r in enumerate(l2):
        uf.union(a, r)
    return uf.labels()


def congruences(A: Structure, budget=CONGRUENCE_BUDGET) -> list:
    """All congruences of A as RelationSubs, lexicographic in their sorted pair indices."""
    n = len(A)
    if n > budget:
        raise BudgetExceeded(0, f"|X| = {n} exceeds congruence budget {budget}")
    principal = {principal_congruence(A, a, b) for a in range(n) for b in range(a + 1, n)}
    found = {tuple(range(n))} | principal
    frontier = list(found)
    while frontier:
        c = frontier.pop()
        for p in principal:
            j = _join(c, p)
            if j not in found:
                found.add(j)
                frontier.append(j)
    AA = product(A, A)
    rels = []
    for labels in found:
        members = tuple(a * n + b for a in range(n) for b in range(n) if labels[a] == labels[b])
        rels.append(RelationSub(A, Sub(AA, members)))
    rels.sort(key=lambda R: R.pairs.members)
    return rels


def verify_largest(R: RelationSub, u: Hom, budget=CONGRUENCE_BUDGET) -> Certificate:
    """Every congruence R' with u normal to R' lies inside R."""
    dig = digest({"u": list(u.map), "relation": relation_to_dict(R)})
    rels = congruences(u.dst, budget)
    mine = R.pairset
    names = u.dst.elements
    for R2 in rels:
        if is_normal(u, R2) and not R2.pairset <= mine:
            return Certificate("largest", dig, len(rels), "refuted", {
                "reason": "a normal congruence is not contained in R",
                "pairs": [[names[a], names[b]] for a, b in R2.sorted_pairs()],
            })
    if not R.is_equivalence or not is_normal(u, R):
        return Certificate("largest", dig, len(rels), "refuted", {"reason": "u is not normal to R"})
    return Certificate("largest", dig, len(rels), "verified")


# --- groupoids --------------------------------------------------------------------


def _wide_closure(G, seed, base):
    members = set(base) | set(G.ids)
    work = [a for a in seed if a not in members]
    members.update(work)
    while work:
        a = work.pop()
        new = [G.inv[a]]
        for b in list(members):
            new.append(G.comp[a][b])
            new.append(G.comp[b][a])
        for c in new:
            if c != -1 and c not in members:
                members.add(c)
                work.append(c)
    return frozenset(members)


def _components(G):
    """Arrow sets of the connected components."""
    comp = list(range(len(G.objects)))

    def find(o):
        while comp[o] != o:
            o = comp[o]
        return o

    for a in range(len(G.arrows)):
        x, y = find(G.src[a]), find(G.tgt[a])
        if x != y:
            comp[max(x, y)] = min(x, y)
    parts = {}
    for a in range(len(G.arrows)):
        parts.setdefault(find(G.src[a]), []).append(a)
    return list(parts.values())


def _mask(arrows):
    m = 0
    for a in arrows:
        m |= 1 << a
    return m


def _arrows_of(mask):
    out, a = [], 0
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return out


def _component_lattice(G, arrows):
    """Wide subgroupoids of one component (as masks), by closure under single arrows."""
    ids = [i for i in G.ids if i in set(arrows)]
    start = _wide_closure(G, ids, ())
    start = frozenset(a for a in start if a in set(arrows))
    seen = {start}
    stack = [start]
    while stack:
        S = stack.pop()
        for e in arrows:
            if e in S:
                continue
            T = _wide_closure(G, (e,), S)
            if T not in seen:
                seen.add(T)
                stack.append(T)
    return [_mask(S) for S in seen]


def wide_subgroupoid_masks(G):
    """Every wide subgroupoid of G as a bitmask of arrows.

    No arrow joins two components, so a wide subgroupoid is exactly a choice
    of one wide subgroupoid per component; the list is the full product.
    """
    masks = [0]
    for arrows in _components(G):
        lat = _component_lattice(G, arrows)
        masks = [m | c for m in masks for c in lat]
    return masks


def wide_subgroupoids(G, base=()):
    """All wide subgroupoids containing base, lexicographic."""
    b = _mask(base)
    out = [frozenset(_arrows_of(m)) for m in wide_subgroupoid_masks(G) if m & b == b]
    return sorted(out, key=lambda s: tuple(sorted(s)))


def _normal_arrows(G, Us):
    """Mask of arrows phi with phi tau phi^-1 in U for every endo tau in U at src phi."""
    uend = {o: [t for t in G.endos[o] if t in Us] for o in G.endos}
    good = 0
    for phi in range(len(G.arrows)):
        if all(G.conj(phi, t) in Us for t in uend[G.src[phi]]):
            good |= 1 << phi
    return good


def normalizing_subgroupoids(U, universe=None):
    """Wide X' containing U with U normal in X', as arrow sets.

    U is normal in X' iff every arrow of X' conjugates U-endos into U, so each
    candidate is tested against the mask of such arrows.  universe: masks
    from wide_subgroupoid_masks, to share one enumeration between many U.
    """
    G = U.parent
    masks = wide_subgroupoid_masks(G) if universe is None else universe
    u = _mask(U.arrowset)
    outside = ~_normal_arrows(G, U.arrowset)
    return [w for w in masks if w & u == u and not w & outside]


def brute_grd_normalizer(U, universe=None):
    """The largest wide subgroupoid in which U is normal, found by enumeration."""
    from .groupoids import WideSubgroupoid
    cands = normalizing_subgroupoids(U, universe)
    top = max(cands, key=lambda w: bin(w).count("1"))
    if any(w | top != top for w in cands):
        raise InternalAssertion("normalizing subgroupoids have no largest element")
    return WideSubgroupoid(U.parent, frozenset(_arrows_of(top)))


def certify_decomposition(m: PtMono, D, budget=DEFAULT_BUDGET) -> Certificate:
    """verify_extremal, turning an exceeded budget into a certificate."""
    try:
        return verify_extremal(m, D, budget)
    except BudgetExceeded as exc:
        return Certificate("extremal", _instance_digest(m, D), exc.enumerated, "budget_exceeded")


def decomposition_digest(D) -> str:
    return digest(decomposition_to_dict(D))
