from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from ptdecomp.algebra import (
    Sub,
    compose,
    generated_sub,
    homomorphisms,
    identity,
    kernel_sub,
    preimage_sub,
    structure_to_dict,
    terminal,
    validate_hom,
    validate_structure,
)
from ptdecomp.catalog import (
    all_groups,
    boolean_semiring,
    dihedral,
    groups_of_order,
    heisenberg_f2,
    monoids_of_order,
    quaternion,
    semilattice2,
    sign_hom,
    upper_triangular_f2,
    zmod_ring,
)
from ptdecomp.errors import AxiomViolation, BadTable, NotHomomorphism, UnknownKey, VarietyMismatch
from ptdecomp.samples import c2

from conftest import idx

SMALL = list(all_groups(8)) + list(monoids_of_order(3)) + [heisenberg_f2(), upper_triangular_f2(),
                                              upper_triangular_f2(unital=True), zmod_ring(6),
                                              semilattice2(), boolean_semiring()]


def test_c2_valid():
    C = c2()
    assert len(C) == 2 and C.neutral == 0 and C.inverses == (0, 1)


def test_associativity_violation():
    # a.(a.b) = a.a = e but (a.a).b = e.b = b
    desc = {"variety": "monoid", "elements": ["e", "a", "b"],
            "op1": [[0, 1, 2], [1, 0, 1], [2, 2, 2]]}
    with pytest.raises(AxiomViolation) as ei:
        validate_structure(desc)
    assert ei.value.law == "associativity"
    a, b, c = ei.value.witness
    op = desc["op1"]
    ix = desc["elements"].index
    assert op[ix(a)][op[ix(b)][ix(c)]] != op[op[ix(a)][ix(b)]][ix(c)]


def test_heisenberg_valid():
    H = heisenberg_f2()
    assert len(H) == 8 and str(H.variety) == "lie-fp(2)"
    x, y, z = H.index("x"), H.index("y"), H.index("z")
    assert H.op2[x][y] == z and H.op2[y][x] == z
    assert H.op2[x][z] == H.op2[y][z] == H.neutral
    # Jacobi by brute force over all 512 triples
    n = len(H)
    add, br = H.op1, H.op2
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert add[add[br[a][br[b][c]]][br[b][br[c][a]]]][br[c][br[a][b]]] == H.neutral


def test_lie_alternation_violation():
    # [x,x] = y breaks alternation
    desc = structure_to_dict(heisenberg_f2())
    x = desc["elements"].index("x")
    y = desc["elements"].index("y")
    desc["op2"] = [list(r) for r in desc["op2"]]
    desc["op2"][x][x] = y
    with pytest.raises(AxiomViolation):
        validate_structure(desc)


def test_unknown_key_and_shape():
    desc = structure_to_dict(c2())
    with pytest.raises(UnknownKey):
        validate_structure({**desc, "colour": "red"})
    with pytest.raises(BadTable):
        validate_structure({**desc, "op1": [[0, 1]]})
    with pytest.raises(BadTable):
        validate_structure({**desc, "op1": [[0, 1], [1, 7]]})


def test_unital_ring_unit():
    T = upper_triangular_f2(unital=True)
    one = T.unit
    assert all(T.op2[one][a] == a == T.op2[a][one] for a in range(len(T)))
    # unital subobjects always contain the unit
    assert one in generated_sub([], T)
    assert one in generated_sub([T.index("[01;00]")], T)


def test_hom_examples(S3, C2s):
    f = identity(S3)
    assert f.injective and f.surjective
    sg = sign_hom()
    assert sg.surjective and not sg.injective
    # the 36 pairs are checked by validate_hom itself
    validate_hom(list(sg.map), S3, C2s)
    C = c2()
    with pytest.raises(NotHomomorphism) as ei:
        validate_hom([1, 0], C, C)
    assert ei.value.op == "neutral"


def test_variety_mismatch(S3):
    with pytest.raises(VarietyMismatch):
        validate_hom([0, 0], semilattice2(), S3)


def test_kernel_examples(S3):
    assert kernel_sub(sign_hom()).members == idx(S3, "e", "(123)", "(132)")
    assert kernel_sub(identity(S3)).members == (S3.neutral,)
    assert kernel_sub(terminal(S3)).members == tuple(range(6))


def test_generated_examples(S3):
    assert generated_sub(idx(S3, "(12)"), S3).members == idx(S3, "e", "(12)")
    assert generated_sub([], S3).members == (S3.neutral,)
    assert generated_sub(idx(S3, "(123)"), S3).members == idx(S3, "e", "(123)", "(132)")


def test_preimage_examples(S3, C2s):
    sg = sign_hom()
    assert preimage_sub(sg, Sub(C2s, (C2s.index("1"),))).members == idx(S3, "e", "(123)", "(132)")
    assert preimage_sub(sg, Sub(C2s, (0, 1))).members == tuple(range(6))
    V = Sub(S3, idx(S3, "e", "(12)"))
    assert preimage_sub(identity(S3), V).members == V.members


@pytest.mark.parametrize("A", SMALL, ids=repr)
def test_round_trip(A):
    d = structure_to_dict(A)
    B = validate_structure(d)
    assert B == A and structure_to_dict(B) == d


@pytest.mark.parametrize("A", [G for G in all_groups(8) if len(G) == 8] + list(monoids_of_order(4)[:6])
                         + [heisenberg_f2(), upper_triangular_f2()], ids=repr)
def test_closure_extensive_idempotent_all_subsets(A):
    n = len(A)
    for k in range(n + 1):
        for seed in combinations(range(n), k):
            S = generated_sub(seed, A)
            assert set(seed) <= S.memberset
            assert generated_sub(S.members, A) == S


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_closure_monotone(A, data):
    n = len(A)
    small = data.draw(st.sets(st.integers(0, n - 1)))
    big = small | data.draw(st.sets(st.integers(0, n - 1)))
    assert generated_sub(small, A).memberset <= generated_sub(big, A).memberset


HOM_PAIRS = [(A, B) for A in all_groups(6) for B in all_groups(6)]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(HOM_PAIRS), st.data())
def test_kernel_is_preimage_of_neutral(pair, data):
    A, B = pair
    f = data.draw(st.sampled_from(homomorphisms(A, B)))
    assert kernel_sub(f) == preimage_sub(f, Sub(B, (B.neutral,)))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(all_groups(6)), st.sampled_from(all_groups(6)), st.sampled_from(all_groups(4)),
       st.data())
def test_composite_kernel(A, B, C, data):
    f = data.draw(st.sampled_from(homomorphisms(A, B)))
    g = data.draw(st.sampled_from(homomorphisms(B, C)))
    gf = compose(g, f)
    assert validate_hom(list(gf.map), A, C) == gf
    assert kernel_sub(f).memberset <= kernel_sub(gf).memberset


def test_group_counts():
    # small-groups counts for orders 1..16
    assert [len(groups_of_order(n)) for n in range(1, 17)] == [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]
    assert [len(monoids_of_order(n)) for n in range(1, 5)] == [1, 2, 7, 35]


def test_named_groups():
    assert len(dihedral(4)) == len(quaternion()) == 8
    assert len(generated_sub([], dihedral(4))) == 1
