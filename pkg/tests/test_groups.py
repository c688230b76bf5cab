import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fusionprod.groups import (
    AutomorphismGroup,
    DomainError,
    SizeLimitError,
    build_group_from_permutations,
    center,
    conjugation_morphism,
    cycles_to_perm,
    generate_subgroup,
    identity_morphism,
    local_subgroup_data,
    parse_cycles,
    perm_group_from_cycles,
    perm_mul,
    perm_to_cycles,
    sylow_and_cores,
    sylow_subgroup,
    transport_automorphisms,
)
from fusionprod.linear import FixtureError, GF, ScalarAction, build_vector_space_semidirect


def test_dihedral_closure():
    G = perm_group_from_cycles(4, ["(1 2 3 4)", "(1 3)"])
    assert G.order == 8


def test_a4_closure():
    G = perm_group_from_cycles(4, ["(1 2 3)", "(1 2)(3 4)"])
    assert G.order == 12


def test_trivial_closure():
    G = build_group_from_permutations(1, [])
    assert G.order == 1
    assert G.elements[0] == (0,)


def test_elements_sorted_identity_first(s4):
    G = s4.G
    assert list(G.elements) == sorted(G.elements)
    assert G.elements[0] == (0, 1, 2, 3)


def test_size_cap():
    gens = [parse_cycles(5, "(1 2 3 4 5)"), parse_cycles(5, "(1 2)")]
    with pytest.raises(SizeLimitError):
        build_group_from_permutations(5, gens, cap=100)


def test_size_cap_from_environment(monkeypatch):
    monkeypatch.setenv("FF_MAX_GROUP_ORDER", "20")
    with pytest.raises(SizeLimitError):
        perm_group_from_cycles(4, ["(1 2 3 4)", "(1 2)"])


def test_bad_permutation_rejected():
    with pytest.raises(ValueError):
        build_group_from_permutations(3, [(0, 0, 1)])
    with pytest.raises(ValueError):
        cycles_to_perm(3, [[1, 4]])
    with pytest.raises(ValueError):
        parse_cycles(4, "(1 2")


def test_group_axioms_exhaustive(s4):
    s4.G.check_axioms()
    for x in s4.G.elements:
        i = s4.G.index(x)
        assert s4.G.order % s4.G.element_order(i) == 0


def test_generate_subgroup(s4):
    V = generate_subgroup(s4.G, [s4.e("(1 2)(3 4)"), s4.e("(1 3)(2 4)")])
    assert V.order == 4
    assert generate_subgroup(s4.G, []).order == 1
    assert generate_subgroup(s4.G, [s4.e("(1 2 3 4)"), s4.e("(1 2)")]) is s4.G.whole


def test_generate_is_idempotent(s4):
    for H in s4.G.whole.all_subgroups:
        assert generate_subgroup(s4.G, H.members) is H


def test_s4_has_30_subgroups(s4):
    assert len(s4.G.whole.all_subgroups) == 30


def test_local_data(s4):
    d = local_subgroup_data(s4.G, s4.V4)
    assert d.normalizer.order == 24
    assert d.centralizer == s4.V4
    top = local_subgroup_data(s4.G, s4.G.whole)
    assert top.normalizer == s4.G.whole and top.centralizer.order == 1
    d = local_subgroup_data(s4.G, s4.sub("(1 3)"))
    assert d.centralizer == s4.sub("(1 3)", "(2 4)")


def test_sylow_and_cores_s4(s4):
    d = sylow_and_cores(s4.G, 2)
    assert d.sylow.order == 8
    assert d.p_residual == s4.A4
    assert d.p_core == s4.V4


def test_sylow_and_cores_p_group(s4):
    d = sylow_and_cores(s4.S, 2)
    assert d.sylow == s4.S and d.p_core == s4.S and d.p_residual.order == 1


def test_sylow_and_cores_a4(s4):
    d = sylow_and_cores(s4.A4, 2)
    assert d.sylow == s4.V4 == d.p_core
    assert d.p_residual == s4.A4


def test_sylow_choice_is_canonical(s4):
    S = sylow_subgroup(s4.G.whole, 2)
    conjugates = {S.conjugate(g) for g in s4.G.whole.members}
    assert S == min(conjugates)


def test_sylow_for_prime_not_dividing(s4):
    assert sylow_subgroup(s4.G.whole, 5).order == 1


def test_conjugation_morphism(s4):
    P, Q = s4.sub("(1 3)"), s4.sub("(2 4)")
    f = conjugation_morphism(s4.e("(1 2)(3 4)"), P, Q)
    assert f(s4.e("(1 3)")) == s4.e("(2 4)")
    inc = conjugation_morphism(0, P, s4.S)
    assert all(inc(x) == x for x in P.members)
    with pytest.raises(DomainError):
        conjugation_morphism(s4.e("(1 2)"), P, P)


def test_conjugation_by_centralizing_element(s4):
    P = s4.sub("(1 3)")
    f = conjugation_morphism(s4.e("(2 4)"), P, P)
    assert f.is_identity()


def test_right_action_convention(s4):
    # x^g = g^-1 x g, and composing c_g then c_h is c_{gh}
    G = s4.G
    g, h = s4.e("(1 2 3)"), s4.e("(1 2)")
    P = G.whole
    assert conjugation_morphism(g, P).then(conjugation_morphism(h, P)) == conjugation_morphism(G.mul(g, h), P)


def test_inner_kernel_is_center(s4):
    for P in s4.S.all_subgroups:
        kernel = [x for x in P.members if conjugation_morphism(x, P, P).is_identity()]
        assert set(kernel) == center(P).memberset
        inn = AutomorphismGroup.inner(P)
        assert inn.order * center(P).order == P.order


def test_transport_identity_and_inner(s4):
    V = s4.V4
    A = AutomorphismGroup.induced(s4.A4, V)
    assert transport_automorphisms(identity_morphism(V), A) == A
    phi = conjugation_morphism(s4.e("(1 2)"), V, V)
    B = transport_automorphisms(phi, A)
    assert B.order == 3
    P = s4.sub("(1 2)", "(3 4)")
    psi = conjugation_morphism(s4.e("(1 3)"), P)
    Q = psi.codomain
    assert transport_automorphisms(psi.as_iso(), AutomorphismGroup.inner(P)) == AutomorphismGroup.inner(Q)


def test_transport_is_functorial(s4):
    V = s4.V4
    A = AutomorphismGroup.induced(s4.G.whole, V)
    phi = conjugation_morphism(s4.e("(1 2)"), V, V)
    psi = conjugation_morphism(s4.e("(1 2 3)"), V, V)
    lhs = transport_automorphisms(psi, transport_automorphisms(phi, A))
    assert lhs == transport_automorphisms(phi.then(psi), A)


def test_transport_rejects_non_isomorphism(s4):
    V = s4.V4
    inc = conjugation_morphism(0, s4.sub("(1 2)(3 4)"), V)
    with pytest.raises(DomainError):
        transport_automorphisms(inc, AutomorphismGroup.inner(s4.sub("(1 2)(3 4)")))


def test_morphism_inverse_and_composition(s4):
    P = s4.S
    for g in s4.G.whole.members[:6]:
        f = conjugation_morphism(g, P).as_iso()
        assert f.then(f.inverse()).is_identity()
        assert f.is_homomorphism()


def test_aut_op_residual_and_core(s4):
    A = AutomorphismGroup.induced(s4.G.whole, s4.V4)
    assert A.order == 6
    assert A.op_residual(2).order == 3
    assert A.op_core(2).order == 1
    assert A.sylow(2).order == 2


# linear fixtures

def test_gf_tables():
    for q in (2, 3, 4, 5, 8, 9):
        F = GF(q)
        for a in range(1, q):
            assert F.mul(a, F.inv(a)) == 1
        for a, b, c in itertools.product(range(q), repeat=3):
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mult_order(F.primitive_element()) == q - 1


def test_gf_rejects_non_prime_power():
    with pytest.raises(FixtureError):
        GF(6)


def test_semidirect_orders():
    A = build_vector_space_semidirect(3, [1], [])
    assert A.group.order == 3
    u, v, w = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    acts = [ScalarAction(2, (u,), (v, w)), ScalarAction(2, (u, v), ((0, 1, 1),))]
    assert build_vector_space_semidirect(3, [1, 1, 1], acts).group.order == 108


def test_semidirect_rejects_singular_scalar():
    with pytest.raises(FixtureError):
        build_vector_space_semidirect(3, [1, 1], [ScalarAction(0, ((1, 0),), ((0, 1),))])


# property tests

perms4 = st.permutations(range(4)).map(tuple)


@settings(max_examples=60, deadline=None)
@given(perms4, perms4, perms4)
def test_perm_mul_associative(a, b, c):
    assert perm_mul(perm_mul(a, b), c) == perm_mul(a, perm_mul(b, c))


@settings(max_examples=60, deadline=None)
@given(perms4)
def test_cycle_notation_round_trip(a):
    text = perm_to_cycles(a)
    assert parse_cycles(4, "" if text == "()" else text) == a


@settings(max_examples=40, deadline=None)
@given(st.lists(perms4, min_size=1, max_size=3))
def test_generated_subgroups_are_closed(gens):
    G = perm_group_from_cycles(4, ["(1 2 3 4)", "(1 2)"])
    H = G.generate(G.index(g) for g in gens)
    assert G.order % H.order == 0
    for x in H.members:
        assert G.inv(x) in H.memberset
        for y in H.members[:6]:
            assert G.mul(x, y) in H.memberset


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(range(24)), st.sampled_from(range(30)))
def test_normalizer_contains_subgroup(gi, hi):
    G = perm_group_from_cycles(4, ["(1 2 3 4)", "(1 2)"])
    H = G.whole.all_subgroups[hi]
    d = local_subgroup_data(G, H)
    assert H <= d.normalizer and d.centralizer <= d.normalizer
    assert H.conjugate(gi).order == H.order
