"""Named small instances, and a writer that dumps them as JSON input files.

    python -m ptdecomp.samples DIR
"""
from __future__ import annotations

import sys
from pathlib import Path

from . import formats as fm
from .algebra import Hom, Sub, structure, structure_to_dict, terminal, one
from .catalog import (
    heisenberg_f2,
    saturating3,
    semilattice2,
    sign_hom,
    symmetric3,
    upper_triangular_f2,
)
from .groupoids import (
    connected_groupoid,
    groupoid_to_dict,
    make_internal_mono,
    make_wide,
    nabla_groupoid_gp,
)
from .normalizers import coset_relation, delta_relation, nabla_relation, relation_mono
from .points import make_point, make_pt_mono, product_point, sub_point

A3 = (0, 4, 5)  # e, (123), (132) inside symmetric3()


def c2():
    return structure("group", ["e", "a"], [[0, 1], [1, 0]])


def sign_point():
    f = sign_hom()
    return make_point(f, Hom(f.dst, f.src, (0, 1)))


def trivial_point(X):
    """X -> 1 split by the neutral element."""
    return make_point(terminal(X), Hom(one(X.variety), X, (X.neutral,)))


def kernel_mono(members=A3):
    """(K -> 1) >-> sign point for a subgroup K of A3, via inclusions."""
    P = sign_point()
    K = Sub(P.X, members)
    Pp = trivial_point(K.as_structure)
    return make_pt_mono(Hom(Pp.Y, P.Y, (0,)), K.inclusion, Pp, P)


def subgroup_inclusion(G, members):
    return Sub(G, tuple(members)).inclusion


def nabla_mono(v):
    """The monomorphism of points nabla U >-> nabla T over v."""
    return relation_mono(nabla_relation(v.src), v)


def semilattice_square():
    """p2: L x L -> L with s(y) = (0, y)."""
    L = semilattice2()
    return product_point(L, L)


def semilattice_sub_mono(xmembers):
    """Inclusion of the sub-point over {0} with total space xmembers of L x L."""
    P = semilattice_square()
    _, m = sub_point(P, Sub(P.Y, (0,)), Sub(P.X, tuple(xmembers)))
    return m


def saturating_point():
    """min(x, 1): {0,1,2} -> L, split by 0 -> 0, 1 -> 2 (the only homomorphic section)."""
    X = saturating3()
    L = semilattice2()
    return make_point(Hom(X, L, (0, 1, 1)), Hom(L, X, (0, 2)))


def heisenberg_span_x():
    H = heisenberg_f2()
    return subgroup_inclusion(H, sorted({H.index("0"), H.index("x")}))


def strict_upper_ideal():
    T = upper_triangular_f2()
    return subgroup_inclusion(T, sorted({T.index("[00;00]"), T.index("[01;00]")}))


def c2_two_objects():
    from .catalog import cyclic
    return connected_groupoid(cyclic(2), ("1", "2"))


def c2_loop():
    T = c2_two_objects()
    loop = next(a for a in range(len(T.arrows)) if T.src[a] == T.tgt[a] == 0 and a not in T.ids)
    return make_wide(T, list(T.ids) + [loop])


def nabla_a3_in_s3():
    S3 = symmetric3()
    U = Sub(S3, A3).as_structure
    n = len(S3)
    m1 = [A3[a] * n + A3[b] for a in range(3) for b in range(3)]
    return make_internal_mono(nabla_groupoid_gp(U), nabla_groupoid_gp(S3), m1, A3)


def write_samples(outdir):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    S3 = symmetric3()

    def dump(name, obj):
        (out / name).write_text(fm.canonical_dumps(fm.with_conventions(obj)) + "\n")

    dump("c2.json", structure_to_dict(c2()))
    dump("s3.json", structure_to_dict(S3))
    dump("semilattice.json", structure_to_dict(semilattice2()))
    dump("sign_point.json", fm.point_to_dict(sign_point()))
    dump("a3_mono.json", fm.pt_mono_to_dict(kernel_mono()))
    dump("e_mono.json", fm.pt_mono_to_dict(kernel_mono((0,))))
    dump("a3_mono_shrunk.json", {"ybar": [0], "xbar": list(A3)})
    dump("saturating_point.json", fm.point_to_dict(saturating_point()))
    dump("semilattice_square.json", fm.point_to_dict(semilattice_square()))
    dump("transposition.json", fm.hom_to_dict(subgroup_inclusion(S3, (0, 1))))
    dump("a3_inclusion.json", fm.hom_to_dict(subgroup_inclusion(S3, A3)))
    dump("a3_cosets.json", fm.relation_to_dict(coset_relation(S3, A3)))
    dump("s3_nabla.json", fm.relation_to_dict(nabla_relation(S3)))
    dump("a3_delta.json", fm.relation_to_dict(delta_relation(Sub(S3, A3).as_structure)))
    dump("heisenberg_span_x.json", fm.hom_to_dict(heisenberg_span_x()))
    dump("strict_upper.json", fm.hom_to_dict(strict_upper_ideal()))
    dump("c2_two_objects.json", groupoid_to_dict(c2_two_objects()))
    dump("c2_loop.json", fm.wide_to_dict(c2_loop()))
    dump("nabla_a3_s3.json", fm.internal_mono_to_dict(nabla_a3_in_s3()))


if __name__ == "__main__":
    write_samples(sys.argv[1] if len(sys.argv) > 1 else "data")
