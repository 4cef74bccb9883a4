import pytest

from ptdecomp.algebra import Sub, compose, identity, subalgebras
from ptdecomp.catalog import all_groups, heisenberg_f2, semilattice2, upper_triangular_f2
from ptdecomp.errors import NotEquivalence, NotNormal
from ptdecomp.normalizers import (
    coset_relation,
    delta_relation,
    extend_relation,
    is_normal,
    largest_normal_congruence,
    make_relation,
    nabla_relation,
    normalizer,
    relation_mono,
)
from ptdecomp.oracle import brute_normalizer, congruences, verify_extremal, verify_largest
from ptdecomp.decomp import decompose
from ptdecomp.samples import A3, heisenberg_span_x, strict_upper_ideal, subgroup_inclusion

from conftest import idx


def _classes(R):
    return sorted(tuple(R.base.elements[i] for i in c) for c in R.classes())


def test_is_normal_examples(S3):
    assert is_normal(subgroup_inclusion(S3, A3), coset_relation(S3, A3))
    assert is_normal(identity(S3), nabla_relation(S3))
    assert not is_normal(subgroup_inclusion(S3, idx(S3, "e", "(12)")), nabla_relation(S3))


def test_is_normal_rejects_non_equivalence():
    L = semilattice2()
    order = make_relation(L, [(0, 0), (0, 1), (1, 1)])
    with pytest.raises(NotEquivalence):
        is_normal(identity(L), order)


def test_normalizer_transposition(S3):
    U = idx(S3, "e", "(12)")
    res = normalizer(subgroup_inclusion(S3, U))
    assert res.X.members == U
    assert res.R.pairset == nabla_relation(res.X.as_structure).pairset
    assert compose(res.w, res.u).map == U


def test_normalizer_a3(S3):
    res = normalizer(subgroup_inclusion(S3, A3))
    assert res.X.members == tuple(range(6))
    assert res.R.pairset == coset_relation(S3, A3).pairset


def test_normalizer_identity():
    for T in all_groups(8):
        res = normalizer(identity(T))
        assert len(res.X) == len(T) and len(res.R.pairset) == len(T) ** 2


def test_lie_idealizer():
    H = heisenberg_f2()
    res = normalizer(heisenberg_span_x())
    assert res.X.members == idx(H, "0", "x", "z", "x+z")
    assert _classes(res.R) == [("0", "x"), ("z", "x+z")]


def test_ring_idealizer():
    T = upper_triangular_f2()
    res = normalizer(strict_upper_ideal())
    assert len(res.X) == len(T)


def test_largest_normal_congruence_examples(S3):
    R = largest_normal_congruence(subgroup_inclusion(S3, A3))
    assert R.pairset == coset_relation(S3, A3).pairset
    assert len(congruences(S3)) == 3
    assert largest_normal_congruence(identity(S3)).pairset == nabla_relation(S3).pairset
    with pytest.raises(NotNormal):
        largest_normal_congruence(subgroup_inclusion(S3, idx(S3, "e", "(12)")))


def test_extend_relation_nabla_is_normalizer():
    for T in all_groups(8):
        for U in subalgebras(T):
            v = Sub(T, tuple(sorted(U))).inclusion
            X, S = extend_relation(nabla_relation(v.src), v)
            res = normalizer(v)
            assert X.members == res.X.members and S.pairset == res.R.pairset


def test_extend_relation_delta(S3):
    v = subgroup_inclusion(S3, A3)
    R = delta_relation(v.src)
    X, S = extend_relation(R, v)
    # frozen from the comprehension: every element of S3 is kept, S is the diagonal
    assert X.members == tuple(range(6))
    assert S.pairset == delta_relation(X.as_structure).pairset
    D = decompose(relation_mono(R, v))
    assert verify_extremal(D.m, D, budget=36).verified


def test_extend_relation_heisenberg_cosets():
    H = heisenberg_f2()
    span_xz = idx(H, "0", "x", "z", "x+z")
    v = subgroup_inclusion(H, span_xz)
    U = v.src
    R = coset_relation(U, idx(U, "0", "x"))
    X, S = extend_relation(R, v)
    # frozen: X = span(x, z) and S = cosets of span(x) in it
    assert X.members == span_xz
    assert _classes(S) == [("0", "x"), ("z", "x+z")]
    D = decompose(relation_mono(R, v))
    assert verify_extremal(D.m, D, budget=64).verified


def test_group_normalizer_cross_check_up_to_24():
    # classical normalizer and right cosets, every subgroup of every group of order <= 24
    count = 0
    for T in all_groups(24):
        inv, op = T.inverses, T.op1
        for U in subalgebras(T):
            Us = set(U)
            v = Sub(T, tuple(sorted(U))).inclusion
            res = normalizer(v)
            N = tuple(t for t in range(len(T)) if {op[op[t][u]][inv[t]] for u in Us} == Us)
            assert res.X.members == N
            X = res.X
            for i, a in enumerate(X.members):
                for j, b in enumerate(X.members):
                    assert ((i, j) in res.R.pairset) == (op[b][inv[a]] in Us)
            count += 1
    assert count == 989


def test_oracle_agreement_rings_lie():
    for v in (heisenberg_span_x(), strict_upper_ideal()):
        res = normalizer(v)
        N, R = brute_normalizer(v)
        assert res.X.members == N.members and res.R.sorted_pairs() == R.sorted_pairs()
    for T in (heisenberg_f2(), upper_triangular_f2()):
        for U in subalgebras(T):
            v = Sub(T, tuple(sorted(U))).inclusion
            res = normalizer(v)
            N, R = brute_normalizer(v)
            assert res.X.members == N.members and res.R.sorted_pairs() == R.sorted_pairs()


def test_maximality_by_congruences():
    for T in all_groups(8):
        for U in subalgebras(T):
            v = Sub(T, tuple(sorted(U))).inclusion
            res = normalizer(v)
            assert verify_largest(res.R, res.u).verified


def test_protomodular_normality_law():
    for T in all_groups(8):
        rels = congruences(T)
        for U in subalgebras(T):
            v = Sub(T, tuple(sorted(U))).inclusion
            normal = any(is_normal(v, R) for R in rels)
            assert normal == (len(normalizer(v).X) == len(T))
