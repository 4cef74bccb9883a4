import pytest
from hypothesis import given, settings, strategies as st

from ptdecomp.algebra import Sub, compose, product, projections, subalgebras
from ptdecomp.catalog import all_groups, cyclic, symmetric3
from ptdecomp.decomp import extremal_decompose
from ptdecomp.errors import NotEquivalence, SimplicialViolation
from ptdecomp.groupoids import (
    dif_decompose_internal_gp,
    discrete_groupoid_gp,
    equivalence_relation_as_groupoid,
    group_groupoid,
    grd_y_is_normal,
    grd_y_normalizer,
    identity_functor,
    identity_internal_mono,
    internal_groupoid_gp,
    internal_mono_as_functor,
    is_discrete_fibration,
    kernel_pair,
    make_functor,
    make_internal_mono,
    make_wide,
    nabla_groupoid_gp,
    validate_groupoid,
)
from ptdecomp.normalizers import (
    coset_relation,
    delta_relation,
    is_normal,
    make_relation,
    nabla_relation,
    normalizer,
)
from ptdecomp.oracle import brute_grd_normalizer, congruences
from ptdecomp.points import make_pt_mono
from ptdecomp.samples import A3, c2_loop, c2_two_objects, nabla_a3_in_s3

from conftest import idx
from corpora import groupoids, internal_monos


def _arrow(G, name):
    return G.arrows.index(name)


def test_discrete_fibration_examples(S3):
    T = c2_two_objects()
    assert is_discrete_fibration(identity_functor(T))
    V = group_groupoid(cyclic(2))
    F = make_functor(V, T, (0,), (_arrow(T, "e:1->1"), _arrow(T, "g1:1->1")))
    assert not is_discrete_fibration(F)

    U = Sub(S3, A3).as_structure
    NU = equivalence_relation_as_groupoid(nabla_relation(U))
    C = equivalence_relation_as_groupoid(coset_relation(S3, A3))
    pos = {p: i for i, p in enumerate(coset_relation(S3, A3).sorted_pairs())}
    F1 = [pos[(A3[a], A3[b])] for a, b in nabla_relation(U).sorted_pairs()]
    assert is_discrete_fibration(make_functor(NU, C, A3, F1))


def test_grd_y_is_normal_examples():
    T = c2_two_objects()
    assert grd_y_is_normal(make_wide(T, T.ids))
    assert grd_y_is_normal(make_wide(T, range(len(T.arrows))))
    assert not grd_y_is_normal(c2_loop())


def test_grd_y_normalizer_examples(S3):
    T = c2_two_objects()
    X = grd_y_normalizer(c2_loop(), budget=len(T.arrows))
    loops = {a for a in range(len(T.arrows)) if T.src[a] == T.tgt[a]}
    assert X.arrowset == loops and len(loops) == 4

    full = make_wide(T, range(len(T.arrows)))
    assert grd_y_normalizer(full).arrowset == full.arrowset

    G = group_groupoid(S3)
    U = make_wide(G, idx(S3, "e", "(12)"))
    assert set(grd_y_normalizer(U, budget=6).arrowset) == set(idx(S3, "e", "(12)"))


def test_equivalence_relation_as_groupoid_examples(S3):
    D = equivalence_relation_as_groupoid(delta_relation(S3))
    assert len(D.arrows) == 6 and all(D.src[a] == D.tgt[a] for a in range(6))
    N = equivalence_relation_as_groupoid(nabla_relation(S3))
    assert len(N.arrows) == 36
    C = equivalence_relation_as_groupoid(coset_relation(S3, A3))
    assert len(C.arrows) == 18
    sizes = {}
    for a in range(18):
        sizes[C.src[a] in A3] = sizes.get(C.src[a] in A3, 0) + 1
    assert sizes == {True: 9, False: 9}
    from ptdecomp.catalog import semilattice2
    L = semilattice2()
    with pytest.raises(NotEquivalence):
        equivalence_relation_as_groupoid(make_relation(L, [(0, 0), (0, 1), (1, 1)]))


def test_internal_examples():
    for G in all_groups(8):
        validate_groupoid(nabla_groupoid_gp(G).as_finite_groupoid())
        validate_groupoid(discrete_groupoid_gp(G).as_finite_groupoid())


def test_internal_mismatched_d2():
    C = cyclic(2)
    CC = product(C, C)
    p0, _ = projections(C, C, CC)
    s0 = [a * 2 + C.neutral for a in range(2)]
    # d2 = second projection of R[d0]: a homomorphism, but d2(phi, phi) = phi != s0.d1(phi)
    d2 = [y for _, y in kernel_pair(p0)]
    with pytest.raises(SimplicialViolation) as ei:
        internal_groupoid_gp(CC, C, p0, p0, s0, d2)
    assert ei.value.identity == "d2.s0 = s0.d1"


def test_dif_nabla_a3_s3(S3):
    m = nabla_a3_in_s3()
    D = dif_decompose_internal_gp(m)
    assert len(D.mid.G0) == 6 and len(D.mid.G1) == 18
    n = len(S3)
    pairs = {(D.w.m1.map[i] // n, D.w.m1.map[i] % n) for i in range(18)}
    assert pairs == coset_relation(S3, A3).pairset
    assert is_discrete_fibration(internal_mono_as_functor(D.u))


def test_dif_identity():
    g = nabla_groupoid_gp(symmetric3())
    D = dif_decompose_internal_gp(identity_internal_mono(g))
    for leg in (D.u, D.w):
        assert leg.m1.map == tuple(range(36)) and leg.m0.map == tuple(range(6))


def test_dif_discrete_into_nabla(S3):
    U = idx(S3, "e", "(12)")
    Us = Sub(S3, U).as_structure
    m = make_internal_mono(discrete_groupoid_gp(Us), nabla_groupoid_gp(S3), [c * 6 + c for c in U], U)
    D = dif_decompose_internal_gp(m)
    # frozen from the group comprehension: mid_0 = T and mid_1 = the diagonal
    assert D.w.m0.map == tuple(range(6))
    assert D.w.m1.map == tuple(t * 6 + t for t in range(6))
    assert is_discrete_fibration(internal_mono_as_functor(D.u))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(internal_monos()))
def test_dif_forgetful_pass(m):
    D = dif_decompose_internal_gp(m)
    pm = make_pt_mono(m.m0, m.m1, m.src.points, m.dst.points)
    E = extremal_decompose(pm)
    assert (E.ybar, E.xbar) == (D.points.ybar, D.points.xbar)
    assert is_discrete_fibration(internal_mono_as_functor(D.u))
    assert compose(D.w.m1, D.u.m1) == m.m1 and compose(D.w.m0, D.u.m0) == m.m0


def _one_object_cases():
    out = []
    for T in all_groups(12):
        for U in subalgebras(T):
            out.append((T, tuple(sorted(U))))
    return out


def test_one_object_consistency():
    for T, U in _one_object_cases():
        G = group_groupoid(T)
        X = grd_y_normalizer(make_wide(G, U))
        assert tuple(sorted(X.arrowset)) == normalizer(Sub(T, U).inclusion).X.members


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([G for G in groupoids() if len(G.arrows) <= 16]), st.data())
def test_normalizer_maximal_sampled(G, data):
    from ptdecomp.oracle import wide_subgroupoids
    Ws = wide_subgroupoids(G)
    U = make_wide(G, data.draw(st.sampled_from(Ws)))
    X = grd_y_normalizer(U)
    assert X.arrowset == brute_grd_normalizer(U).arrowset


def test_is_normal_iff_discrete_fibration():
    # is_normal(u, R) <=> nabla U -> groupoid of R is a discrete fibration and (i) holds
    checked = 0
    for T in all_groups(12):
        rels = congruences(T, budget=12)
        for U in subalgebras(T):
            U = tuple(sorted(U))
            u = Sub(T, U).inclusion
            NU = equivalence_relation_as_groupoid(nabla_relation(u.src))
            upairs = nabla_relation(u.src).sorted_pairs()
            for R in rels:
                cond_i = all((a, b) in R.pairset for a in U for b in U)
                if cond_i:
                    pos = {p: i for i, p in enumerate(R.sorted_pairs())}
                    F = make_functor(NU, equivalence_relation_as_groupoid(R), U,
                                     [pos[(U[a], U[b])] for a, b in upairs])
                    rhs = is_discrete_fibration(F)
                else:
                    rhs = False
                assert is_normal(u, R) == rhs
                checked += 1
    assert checked > 0
