"""Normal monomorphisms, normalizers and largest normal congruences.

A monomorphism v: U >-> T is turned into the monomorphism of points
(nabla U -> U) >-> (nabla T -> T) over v, both split by the diagonal; the
middle point of its extremal decomposition is an equivalence relation R_v on
the normalizer X <= T.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import Hom, Structure, Sub, make_sub, parse_variety, product
from .decomp import Decomposition, decompose
from .errors import (
    InternalAssertion,
    NotEquivalence,
    NotMono,
    NotNormal,
    VarietyMismatch,
)
from .points import Point, PtMono, make_pt_mono, nabla_point


@dataclass(frozen=True)
class RelationSub:
    """A reflexive subalgebra of base x base; pair (a, b) has index a*n + b."""

    base: Structure
    pairs: Sub

    def __repr__(self):
        return f"<RelationSub with {len(self.pairs)} pairs on {self.base!r}>"

    @cached_property
    def pairset(self) -> frozenset:
        n = len(self.base)
        return frozenset(divmod(i, n) for i in self.pairs.members)

    def __contains__(self, pair):
        return tuple(pair) in self.pairset

    @property
    def symmetric(self):
        return all((b, a) in self.pairset for a, b in self.pairset)

    @property
    def transitive(self):
        succ = {}
        for a, b in self.pairset:
            succ.setdefault(a, set()).add(b)
        return all(c in succ[a] for a, b in self.pairset for c in succ.get(b, ()))

    @property
    def is_equivalence(self):
        return self.symmetric and self.transitive

    def classes(self):
        """Partition view (only meaningful for equivalences)."""
        seen, out = set(), []
        for a in range(len(self.base)):
            if a in seen:
                continue
            c = tuple(b for b in range(len(self.base)) if (a, b) in self.pairset)
            seen.update(c)
            out.append(c)
        return out

    def sorted_pairs(self):
        return sorted(self.pairset)


def make_relation(base: Structure, pairs) -> RelationSub:
    n = len(base)
    members = {a * n + b for a, b in pairs}
    rel = RelationSub(base, make_sub(product(base, base), members))
    missing = [a for a in range(n) if (a, a) not in rel.pairset]
    if missing:
        raise NotEquivalence(f"relation is not reflexive at {base.elements[missing[0]]}",
                             base.elements[missing[0]])
    return rel


def nabla_relation(X: Structure) -> RelationSub:
    n = len(X)
    return RelationSub(X, Sub(product(X, X), tuple(range(n * n))))


def delta_relation(X: Structure) -> RelationSub:
    n = len(X)
    return RelationSub(X, Sub(product(X, X), tuple(a * n + a for a in range(n))))


def coset_relation(X: Structure, U) -> RelationSub:
    """(a, b) with b a^-1 in U (b - a in U additively)."""
    us = set(U)
    return make_relation(X, [(a, b) for a in range(len(X)) for b in range(len(X))
                             if X.div(b, a) in us])


def kernel_relation(f: Hom) -> RelationSub:
    X = f.src
    return make_relation(X, [(a, b) for a in range(len(X)) for b in range(len(X))
                             if f.map[a] == f.map[b]])


def relation_point(R: RelationSub) -> Point:
    """d0: R -> X split by the diagonal."""
    n = len(R.base)
    Rs = R.pairs.as_structure
    d0 = Hom(Rs, R.base, tuple(i // n for i in R.pairs.members))
    s0 = Hom(R.base, Rs, tuple(R.pairs.position(a * n + a) for a in range(n)))
    return Point(d0, s0)


def _require_equivalence(R: RelationSub):
    if not R.is_equivalence:
        raise NotEquivalence("relation is not an equivalence relation")


def is_normal(u: Hom, R: RelationSub) -> bool:
    """u^-1(R) = nabla_U, and u(U) is closed under R-relatedness (a class of R)."""
    if not u.injective:
        raise NotMono("u")
    if R.base != u.dst:
        raise VarietyMismatch("relation does not live on the codomain of u")
    _require_equivalence(R)
    img = u.image
    ps = R.pairset
    if any((a, b) not in ps for a in img for b in img):
        return False
    return all(b in img for a, b in ps if a in img)


@dataclass(frozen=True)
class NormalizerResult:
    u: Hom  # U >-> X, normal to R
    w: Hom  # X >-> T
    R: RelationSub
    decomposition: Decomposition

    @property
    def X(self) -> Sub:
        return self.decomposition.ysub


def relation_mono(R: RelationSub, v: Hom) -> PtMono:
    T = v.dst
    nT = len(T)
    P = nabla_point(T)
    Pp = relation_point(R)
    nU = len(R.base)
    x = Hom(Pp.X, P.X, tuple(v.map[i // nU] * nT + v.map[i % nU] for i in R.pairs.members))
    return make_pt_mono(v, x, Pp, P)


def _relation_on(decomp: Decomposition) -> RelationSub:
    """Read the middle total space (pairs of T) as a relation on Ybar."""
    T = decomp.m.dst.Y
    nT = len(T)
    X = decomp.ysub
    pairs = []
    for i in decomp.xbar:
        a, b = divmod(i, nT)
        if a not in X or b not in X:
            raise InternalAssertion("d1 does not restrict to the middle carrier")
        pairs.append((X.position(a), X.position(b)))
    return make_relation(X.as_structure, pairs)


def _check_mono(v: Hom, variety):
    if not v.injective:
        raise NotMono("v")
    if variety is not None and parse_variety(variety) != v.src.variety:
        raise VarietyMismatch(f"structures are {v.src.variety}, not {variety}")


def normalizer(v: Hom, variety=None) -> NormalizerResult:
    _check_mono(v, variety)
    D = decompose(relation_mono(nabla_relation(v.src), v))
    R = _relation_on(D)
    X = D.ysub
    u = X.corestrict(v)
    if not is_normal(u, R):
        raise InternalAssertion("u is not normal to the computed relation")
    return NormalizerResult(u, X.inclusion, R, D)


def largest_normal_congruence(u: Hom) -> RelationSub:
    res = normalizer(u)
    if len(res.X) != len(u.dst):
        raise NotNormal("u is not normal: its normalizer is a proper subobject",
                        [u.dst.elements[a] for a in res.X.members])
    return make_relation(u.dst, res.R.sorted_pairs())


def extend_relation(R: RelationSub, v: Hom, variety=None):
    """(X, S): S is the largest equivalence on X <= T with R >-> S fibrant over u."""
    _check_mono(v, variety)
    if R.base != v.src:
        raise VarietyMismatch("relation does not live on the domain of v")
    _require_equivalence(R)
    D = decompose(relation_mono(R, v))
    S = _relation_on(D)
    X = D.ysub
    u = X.corestrict(v)
    if not S.is_equivalence:
        raise InternalAssertion("extended relation is not an equivalence")
    img = {a: i for i, a in enumerate(u.map)}
    for a in range(len(R.base)):
        for c, x in S.pairset:
            if c != u.map[a]:
                continue
            lifts = [b for b in range(len(R.base)) if (a, b) in R.pairset and u.map[b] == x]
            if len(lifts) != 1:
                raise InternalAssertion("induced R >-> S is not a discrete fibration")
    pulled = {(img[c], img[x]) for c, x in S.pairset if c in img and x in img}
    if pulled != set(R.pairset):
        raise InternalAssertion("S does not pull back to R")
    return X, S
