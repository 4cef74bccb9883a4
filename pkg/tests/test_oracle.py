import pytest
from hypothesis import given, settings, strategies as st

from ptdecomp.algebra import Hom, identity, kernel_sub, one
from ptdecomp.catalog import all_groups, semilattice2, sign_hom, symmetric3
from ptdecomp.decomp import Decomposition, decompose
from ptdecomp.errors import BudgetExceeded, NotCommuting
from ptdecomp.formats import canonical_dumps
from ptdecomp.normalizers import coset_relation, delta_relation, nabla_relation
from ptdecomp.oracle import (
    brute_normalizer,
    certify_decomposition,
    congruences,
    maltsev_probe,
    verify_extremal,
    verify_largest,
    verify_pullback,
)
from ptdecomp.points import identity_mono
from ptdecomp.samples import A3, heisenberg_span_x, kernel_mono, sign_point, subgroup_inclusion

from conftest import idx
from corpora import group_monos


def test_verify_pullback_examples(S3, C2s):
    sg = sign_hom()
    K = kernel_sub(sg)
    to_one = Hom(K.as_structure, one("group"), (0,) * 3)
    point = Hom(one("group"), C2s, (C2s.neutral,))
    assert verify_pullback((to_one, K.inclusion, point, sg))
    ident = identity(S3)
    assert verify_pullback((ident, ident, ident, ident))
    assert not verify_pullback(kernel_mono((0,)))
    assert verify_pullback(kernel_mono())


def test_verify_pullback_not_commuting(S3, C2s):
    sg = sign_hom()
    flip = Hom(C2s, C2s, (1, 0))
    e = Hom(one("group"), S3, (S3.neutral,))
    with pytest.raises(NotCommuting):
        verify_pullback((Hom(one("group"), C2s, (0,)), e, flip, sg))


def test_verify_extremal_examples():
    m = kernel_mono()
    D = decompose(m)
    c = verify_extremal(m, D)
    # alternatives: Y'' in {1, C2} with X'' meeting A3 exactly in A3 -> (1, A3), (C2, S3)
    assert c.verified and c.alternatives_checked == 2
    shrunk = Decomposition(m, (0,), tuple(A3), D.variety)
    c = verify_extremal(m, shrunk)
    assert c.status == "refuted"
    # the witness is the true middle point, which does not fit inside X'
    assert c.witness["xbar"] == list(m.dst.X.elements) and len(c.witness["ybar"]) == 2
    P = sign_point()
    im = identity_mono(P)
    assert verify_extremal(im, decompose(im)).verified


def test_verify_extremal_budget():
    m = kernel_mono()
    with pytest.raises(BudgetExceeded):
        verify_extremal(m, decompose(m), budget=4)
    assert certify_decomposition(m, decompose(m), budget=4).status == "budget_exceeded"


def test_brute_normalizer_examples(S3):
    N, _ = brute_normalizer(subgroup_inclusion(S3, idx(S3, "e", "(12)")))
    assert N.members == idx(S3, "e", "(12)")
    N, R = brute_normalizer(subgroup_inclusion(S3, A3))
    assert N.members == tuple(range(6)) and R.pairset == coset_relation(S3, A3).pairset
    N, _ = brute_normalizer(heisenberg_span_x())
    H = N.parent
    assert N.members == idx(H, "0", "x", "z", "x+z")


def test_maltsev_examples():
    for G in all_groups(8):
        assert maltsev_probe(G) is None
    R = maltsev_probe(semilattice2())
    assert R.sorted_pairs() == [(0, 0), (0, 1), (1, 1)]
    assert maltsev_probe(one("monoid")) is None
    with pytest.raises(BudgetExceeded):
        maltsev_probe(symmetric3(), budget=4)


def test_verify_largest_examples(S3):
    u = subgroup_inclusion(S3, A3)
    assert len(congruences(S3)) == 3
    c = verify_largest(coset_relation(S3, A3), u)
    assert c.verified and c.alternatives_checked == 3
    assert verify_largest(nabla_relation(S3), identity(S3)).verified
    c = verify_largest(delta_relation(S3), u)
    assert c.status == "refuted"
    assert c.witness["pairs"] == [[S3.elements[a], S3.elements[b]]
                                 for a, b in coset_relation(S3, A3).sorted_pairs()]


def test_congruences_budget():
    with pytest.raises(BudgetExceeded):
        congruences(all_groups(12)[-1], budget=8)


def _mutations(m, D):
    X, Y = m.dst.X, m.dst.Y
    for b in range(len(Y)):
        yb = tuple(sorted(set(D.ybar) ^ {b}))
        yield Decomposition(m, yb, D.xbar, D.variety)
    for a in range(len(X)):
        xb = tuple(sorted(set(D.xbar) ^ {a}))
        yield Decomposition(m, D.ybar, xb, D.variety)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(group_monos()), st.data())
def test_soundness_under_mutation(m, data):
    D = decompose(m)
    muts = list(_mutations(m, D))
    for M in data.draw(st.lists(st.sampled_from(muts), min_size=1, max_size=4)):
        assert verify_extremal(m, M).status == "refuted"


def test_determinism():
    sample = group_monos()[::25]
    first = [canonical_dumps(verify_extremal(m, decompose(m)).to_dict()) for m in sample]
    second = [canonical_dumps(verify_extremal(m, decompose(m)).to_dict()) for m in sample]
    assert first == second
    shrunk = Decomposition(kernel_mono(), (0,), tuple(A3), decompose(kernel_mono()).variety)
    a = canonical_dumps(verify_extremal(shrunk.m, shrunk).to_dict())
    b = canonical_dumps(verify_extremal(shrunk.m, shrunk).to_dict())
    assert a == b
