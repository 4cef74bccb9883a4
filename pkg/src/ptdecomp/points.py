"""Split epimorphisms with chosen section and monomorphisms between them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import (
    Hom,
    Structure,
    Sub,
    compose,
    diagonal,
    identity,
    kernel_sub,
    product,
    projections,
)
from .errors import NotMono, NotSection, SquareFails, VarietyMismatch


@dataclass(frozen=True)
class Point:
    """f: X -> Y with section s: Y -> X."""

    f: Hom
    s: Hom

    @property
    def X(self) -> Structure:
        return self.f.src

    @property
    def Y(self) -> Structure:
        return self.f.dst

    @property
    def variety(self):
        return self.f.src.variety

    @cached_property
    def kernel(self) -> Sub:
        return kernel_sub(self.f)

    def __repr__(self):
        return f"<Point {len(self.X)} -> {len(self.Y)}>"


def make_point(f: Hom, s: Hom) -> Point:
    if s.dst != f.src or s.src != f.dst:
        raise VarietyMismatch("section does not go Y -> X")
    for y in range(len(f.dst)):
        if f.map[s.map[y]] != y:
            raise NotSection(f.dst.elements[y])
    return Point(f, s)


def identity_point(X: Structure) -> Point:
    return Point(identity(X), identity(X))


def nabla_point(T: Structure) -> Point:
    """First projection T x T -> T split by the diagonal."""
    TT = product(T, T)
    p0, _ = projections(T, T, TT)
    return Point(p0, diagonal(T, TT))


def product_point(K: Structure, Y: Structure) -> Point:
    """Second projection K x Y -> Y split by y -> (e, y)."""
    KY = product(K, Y)
    _, p1 = projections(K, Y, KY)
    nY = len(Y)
    return Point(p1, Hom(Y, KY, tuple(K.neutral * nY + y for y in range(nY))))


@dataclass(frozen=True)
class PtMono:
    """Commuting square (y, x): src -> dst with x, y injective."""

    src: Point
    dst: Point
    x: Hom
    y: Hom

    @cached_property
    def ximage(self) -> frozenset:
        return self.x.image

    @cached_property
    def yimage(self) -> frozenset:
        return self.y.image

    @property
    def variety(self):
        return self.dst.variety

    def __repr__(self):
        return f"<PtMono {self.src!r} >-> {self.dst!r}>"


def make_pt_mono(y: Hom, x: Hom, Pp: Point, P: Point) -> PtMono:
    if x.src != Pp.X or x.dst != P.X or y.src != Pp.Y or y.dst != P.Y:
        raise VarietyMismatch("legs do not match the points")
    fp, sp, f, s = Pp.f.map, Pp.s.map, P.f.map, P.s.map
    for a in range(len(Pp.X)):
        if f[x.map[a]] != y.map[fp[a]]:
            raise SquareFails("f.x = y.f'", Pp.X.elements[a])
    for b in range(len(Pp.Y)):
        if x.map[sp[b]] != s[y.map[b]]:
            raise SquareFails("x.s' = s.y", Pp.Y.elements[b])
    if not x.injective:
        raise NotMono("x")
    if not y.injective:
        raise NotMono("y")
    return PtMono(Pp, P, x, y)


def identity_mono(P: Point) -> PtMono:
    return PtMono(P, P, identity(P.X), identity(P.Y))


def compose_mono(n: PtMono, m: PtMono) -> PtMono:
    """n . m"""
    if m.dst != n.src:
        raise VarietyMismatch("non-composable point monomorphisms")
    return PtMono(m.src, n.dst, compose(n.x, m.x), compose(n.y, m.y))


def sub_point(P: Point, ysub: Sub, xsub: Sub) -> tuple[Point, PtMono]:
    """The point obtained by restricting P to subobjects, with its inclusion.

    Requires f(xsub) <= ysub and s(ysub) <= xsub.
    """
    Yb, Xb = ysub.as_structure, xsub.as_structure
    f = Hom(Xb, Yb, tuple(ysub.position(P.f.map[a]) for a in xsub.members))
    s = Hom(Yb, Xb, tuple(xsub.position(P.s.map[b]) for b in ysub.members))
    Q = Point(f, s)
    return Q, PtMono(Q, P, xsub.inclusion, ysub.inclusion)


def is_cartesian(m: PtMono) -> bool:
    """x maps X' bijectively onto f^-1(y(Y'))."""
    f = m.dst.f.map
    yim = m.yimage
    fiber = {a for a in range(len(m.dst.X)) if f[a] in yim}
    return fiber == m.ximage


def _pullback(P: Point, h: Hom):
    if h.dst != P.Y:
        raise VarietyMismatch("pullback along a map not landing in the base")
    Yp = h.src
    YX = product(Yp, P.X)
    nX = len(P.X)
    members = tuple(b * nX + a for b in range(len(Yp)) for a in range(nX) if h.map[b] == P.f.map[a])
    carrier = Sub(YX, members)
    C = carrier.as_structure
    f = Hom(C, Yp, tuple(i // nX for i in members))
    s = Hom(Yp, C, tuple(carrier.position(b * nX + P.s.map[h.map[b]]) for b in range(len(Yp))))
    k = Hom(C, P.X, tuple(i % nX for i in members))
    return Point(f, s), k


def pullback_point(P: Point, h: Hom):
    """h*(P) over h.src, and the projection square as a PtMono when h is injective."""
    Q, k = _pullback(P, h)
    mono = PtMono(Q, P, k, h) if h.injective else None
    return Q, mono


def pullback_projection(P: Point, h: Hom) -> tuple[Point, Hom]:
    """h*(P) together with the total-space projection k: h*X -> X."""
    return _pullback(P, h)


def pullback_pt_mono(m: PtMono, h: Hom) -> PtMono:
    """Pull the monomorphism m back along h: Y'' -> Y (any homomorphism).

    The result lands in h*(m.dst); its source sits over h^-1(y(Y')) with total
    space k^-1(x(X')), both as inclusions.
    """
    Q, k = _pullback(m.dst, h)
    ysub = Sub(Q.Y, tuple(b for b in range(len(Q.Y)) if h.map[b] in m.yimage))
    xsub = Sub(Q.X, tuple(c for c in range(len(Q.X)) if k.map[c] in m.ximage))
    _, mono = sub_point(Q, ysub, xsub)
    return mono
