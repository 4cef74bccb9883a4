"""Extremal decompositions of monomorphisms of points.

A monomorphism m: (f', s') >-> (f, s) factors as m = w . u where u is a
pullback square (cartesian) and w is terminal among such factorizations.
The middle point lives on subobjects Xbar <= X over Ybar <= Y:

* groups:  Ybar = {y : s(y) u s(y)^-1 in X' for all u in Ker f'}
* rings:   Ybar = {y : s(y) u and u s(y) in X' for all u in Ker f'}
* Lie:     Ybar = {y : [s(y), u] in X' for all u in Ker f'}

and in each case Xbar = {x : f(x) in Ybar and x - s f(x) in X'} (written
multiplicatively for groups).  Monoids and semirings only admit the
construction on Schreier points, through the retraction q.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import Sub, compose, is_closed, parse_variety
from .errors import InternalAssertion, NotSchreier, VarietyMismatch
from .points import (
    Point,
    PtMono,
    is_cartesian,
    make_pt_mono,
    pullback_projection,
    pullback_pt_mono,
    sub_point,
)


@dataclass(frozen=True)
class Decomposition:
    """m = w . u through the point on (xbar over ybar).

    ybar and xbar are sorted index tuples in m.dst.Y and m.dst.X; the legs and
    the middle point are built lazily from them.
    """

    m: PtMono
    ybar: tuple
    xbar: tuple
    variety: object

    @cached_property
    def ysub(self) -> Sub:
        return Sub(self.m.dst.Y, self.ybar)

    @cached_property
    def xsub(self) -> Sub:
        return Sub(self.m.dst.X, self.xbar)

    @cached_property
    def _built(self):
        mid, w = sub_point(self.m.dst, self.ysub, self.xsub)
        u = make_pt_mono(self.ysub.corestrict(self.m.y), self.xsub.corestrict(self.m.x),
                         self.m.src, mid)
        return mid, u, w

    @property
    def mid(self) -> Point:
        return self._built[0]

    @property
    def u(self) -> PtMono:
        return self._built[1]

    @property
    def w(self) -> PtMono:
        return self._built[2]


@dataclass(frozen=True)
class SchreierRetraction:
    point: Point
    q: tuple  # X index -> X index of an element of Ker f


def _check_variety(m: PtMono, variety):
    v = m.variety if variety is None else parse_variety(variety)
    if v != m.variety:
        raise VarietyMismatch(f"structures are {m.variety}, not {v}")
    return v


def _ybar_direct(m: PtMono, v):
    P = m.dst
    X, s = P.X, P.s.map
    Xp = m.ximage
    K = [m.x.map[k] for k in m.src.kernel.members]
    op1, op2, inv = X.op1, X.op2, X.inverses
    out = []
    for y in range(len(P.Y)):
        sy = s[y]
        if v.tag in ("group", "abelian-group"):
            ok = all(op1[op1[sy][u]][inv[sy]] in Xp for u in K)
        elif v.tag in ("ring", "unital-ring"):
            ok = all(op2[sy][u] in Xp and op2[u][sy] in Xp for u in K)
        elif v.tag == "lie-fp":
            ok = all(op2[sy][u] in Xp for u in K)
        else:
            raise VarietyMismatch(f"{v} has no direct decomposition formula; use the Schreier path")
        if ok:
            out.append(y)
    return tuple(out)


def _finish(m: PtMono, ybar, xbar, v, *, schreier=False) -> Decomposition:
    for name, A, members in (("Ybar", m.dst.Y, ybar), ("Xbar", m.dst.X, xbar)):
        if v.tag == "semiring":
            add_only = _closed_additively(A, set(members))
            if add_only is not None:
                raise InternalAssertion(f"{name} not an additive submonoid: {add_only}")
        bad = is_closed(A, set(members))
        if bad is not None:
            what = "multiplicative closure" if v.tag == "semiring" and bad[0] == "op2" else "closure"
            raise InternalAssertion(f"{name} fails {what}: {bad}")
    D = Decomposition(m, tuple(ybar), tuple(xbar), v)
    if not is_cartesian(D.u):
        raise InternalAssertion("left square of the decomposition is not a pullback")
    if compose(D.w.x, D.u.x) != m.x or compose(D.w.y, D.u.y) != m.y:
        raise InternalAssertion("w . u differs from the decomposed monomorphism")
    if schreier:
        try:
            schreier_retraction(D.mid)
        except NotSchreier as exc:
            raise InternalAssertion(f"middle point is not Schreier: {exc}") from exc
    return D


def _closed_additively(A, S):
    if A.neutral not in S:
        return ("neutral", ())
    for a in S:
        for b in S:
            if A.op1[a][b] not in S:
                return ("op1", (a, b))
    return None


def extremal_decompose(m: PtMono, variety=None) -> Decomposition:
    """Decomposition for groups, abelian groups, rings, unital rings, Lie algebras."""
    v = _check_variety(m, variety)
    ybar = _ybar_direct(m, v)
    ys = set(ybar)
    P = m.dst
    X, f, s = P.X, P.f.map, P.s.map
    Xp = m.ximage
    xbar = tuple(a for a in range(len(X)) if f[a] in ys and X.div(a, s[f[a]]) in Xp)
    return _finish(m, ybar, xbar, v)


def schreier_retraction(P: Point) -> SchreierRetraction:
    """The retraction q with x = q(x) . s(f(x)), if every mu_y is bijective."""
    X, Y = P.X, P.Y
    f, s = P.f.map, P.s.map
    op = X.op1
    K = P.kernel.members
    q = [None] * len(X)
    for y in range(len(Y)):
        fiber = {a for a in range(len(X)) if f[a] == y}
        hit = {}
        for k in K:
            a = op[k][s[y]]
            if a in hit:
                raise NotSchreier(Y.elements[y], "mu_y not injective",
                                  (X.elements[hit[a]], X.elements[k]))
            hit[a] = k
        missing = sorted(fiber - set(hit))
        if missing:
            raise NotSchreier(Y.elements[y], "mu_y not surjective", X.elements[missing[0]])
        for a, k in hit.items():
            q[a] = k
    for a in range(len(X)):
        assert op[q[a]][s[f[a]]] == a
    for k in K:
        for t in range(len(Y)):
            assert q[op[k][s[t]]] == k
    return SchreierRetraction(P, tuple(q))


def extremal_decompose_schreier(m: PtMono, variety=None) -> Decomposition:
    """Decomposition of a monomorphism between Schreier points (monoids, semirings).

    For semirings the additive construction is used and multiplicative
    closure of the result is asserted, not constructed.
    """
    v = _check_variety(m, variety)
    if v.has_op2 and v.tag != "semiring":
        raise VarietyMismatch(f"the Schreier path ignores the multiplication of {v}")
    schreier_retraction(m.src)
    q = schreier_retraction(m.dst).q
    P = m.dst
    X, f, s = P.X, P.f.map, P.s.map
    Xp = m.ximage
    K = [m.x.map[k] for k in m.src.kernel.members]
    op = X.op1
    ybar = tuple(y for y in range(len(P.Y)) if all(q[op[s[y]][u]] in Xp for u in K))
    ys = set(ybar)
    xbar = tuple(a for a in range(len(X)) if f[a] in ys and q[a] in Xp)
    return _finish(m, ybar, xbar, v, schreier=True)


def decompose(m: PtMono, variety=None) -> Decomposition:
    """Dispatch on the variety: direct formula, or the Schreier path."""
    v = _check_variety(m, variety)
    if v.schreier_path:
        return extremal_decompose_schreier(m, v)
    return extremal_decompose(m, v)


def ybar(m: PtMono, variety=None) -> tuple:
    v = _check_variety(m, variety)
    if v.schreier_path:
        return extremal_decompose_schreier(m, v).ybar
    return _ybar_direct(m, v)


def is_outsider(m: PtMono, variety=None):
    """(Ybar == y(Y'), Ybar)."""
    yb = ybar(m, variety)
    return set(yb) == m.yimage, Sub(m.dst.Y, yb)


def pullback_decomposition(D: Decomposition, h) -> Decomposition:
    """Pull the decomposition D back along h: Y'' -> Y, leg by leg."""
    m = D.m
    mh = pullback_pt_mono(m, h)
    Q, k = pullback_projection(m.dst, h)
    yb, xb = set(D.ybar), set(D.xbar)
    ybar_ = tuple(b for b in range(len(Q.Y)) if h.map[b] in yb)
    xbar_ = tuple(c for c in range(len(Q.X)) if k.map[c] in xb)
    return Decomposition(mh, ybar_, xbar_, D.variety)


def decompose_stable_check(m: PtMono, h, variety=None) -> bool:
    """Decompose-then-pull-back equals pull-back-then-decompose."""
    D = decompose(m, variety)
    lhs = pullback_decomposition(D, h)
    rhs = decompose(lhs.m, variety)
    return lhs == rhs
