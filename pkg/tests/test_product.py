import pytest

from fusionprod.fusion import (
    FusionError,
    inner_system,
    is_centric,
    systems_equal,
)
from fusionprod.groups import AutomorphismGroup, center, op_residual
from fusionprod.product import (
    ProductInstance,
    a_circ,
    a_full,
    find_well_placed,
    hyperfocal_subgroup,
    is_well_placed,
    normalizer_chain,
    op_residual_subsystem,
    product_subsystem,
    verify_main_theorem,
)


@pytest.fixture(scope="module")
def inst(s4):
    return ProductInstance(s4.F, s4.F0, s4.S)


def test_instance_rejects_bad_carrier(s4):
    with pytest.raises(FusionError):
        ProductInstance(s4.F, s4.F0, s4.sub("(1 3)", "(2 4)"))


def test_instance_rejects_non_normal(s4):
    with pytest.raises(FusionError):
        ProductInstance(s4.F, inner_system(center(s4.S), 2), s4.S)


def test_a_circ_trivial_for_p_group_automizers(inst):
    for P in inst.T.all_subgroups:
        if inst.F.aut(P).is_p_group(2):
            assert a_circ(inst, P).order == 1


def test_a_circ_v4(inst, s4):
    A = a_circ(inst, s4.V4)
    assert A.order == 3
    # independent oracle: O^2(Aut_A4(V4))
    assert A == AutomorphismGroup.induced(s4.A4, s4.V4).op_residual(2)


def test_a_circ_outside_T(s4):
    small = ProductInstance(s4.F, s4.F0, s4.V4)
    with pytest.raises(FusionError):
        a_circ(small, s4.S)


def test_a_full(inst, s4):
    assert a_full(inst, s4.V4).order == 6
    assert a_full(inst, s4.V4) == inst.product.aut(s4.V4)
    assert a_full(inst, s4.S) == AutomorphismGroup.inner(s4.S).product(a_circ(inst, s4.S))
    for P in inst.T.all_subgroups:
        if a_circ(inst, P).order == 1:
            assert a_full(inst, P) == AutomorphismGroup.induced(inst.T, P)


def test_product_on_S0_is_F0(s4):
    inst0 = ProductInstance(s4.F, s4.F0, s4.V4)
    assert systems_equal(product_subsystem(inst0), s4.F0)


def test_product_s4_is_whole_system(inst, s4):
    assert systems_equal(product_subsystem(inst), s4.F)


def test_product_with_itself(s4):
    assert systems_equal(product_subsystem(ProductInstance(s4.F, s4.F, s4.S)), s4.F)


def test_over_uses_S0R(s4):
    R = s4.sub("(1 3)")
    inst = ProductInstance.over(s4.F, s4.F0, R)
    assert inst.T == s4.V4.join(R) and inst.T.order == 8


def test_well_placed_S0(inst):
    cert = is_well_placed(inst, inst.S0)
    assert cert.valid and cert.chain == [inst.S0]


def test_well_placed_rejects_outside(inst, s4):
    with pytest.raises(FusionError):
        is_well_placed(inst, s4.sub("(1 3)"))


def test_well_placed_condition_one_fails(s4):
    # with F0 = F, the non-central double transposition subgroup is not fully normalized
    inst = ProductInstance(s4.F, s4.F, s4.S)
    P = s4.sub("(1 2)(3 4)")
    cert = is_well_placed(inst, P)
    assert not cert.valid
    assert cert.levels[0][0] is False
    phi, good = find_well_placed(inst, P)
    assert phi.codomain == center(s4.S) and good.valid


def test_find_well_placed_for_order_two_subgroups(inst, s4):
    for Q0 in s4.V4.all_subgroups:
        phi, cert = find_well_placed(inst, Q0)
        assert phi.domain is Q0 and inst.product.contains(phi)
        assert cert.valid and is_well_placed(inst, phi.codomain).valid
    phi, cert = find_well_placed(inst, s4.V4)
    assert phi.is_identity()


def test_find_well_placed_rank_three(ex75):
    inst = ex75.instance
    phi, cert = find_well_placed(inst, ex75.handles["U"])
    assert cert.valid


def test_normalizer_chain_increases(inst):
    for Q0 in inst.S0.all_subgroups:
        chain = normalizer_chain(inst.S0, Q0)
        assert chain[-1] is inst.S0
        assert all(a.order < b.order for a, b in zip(chain, chain[1:]))


def test_hyperfocal(s4, ex74):
    assert hyperfocal_subgroup(inner_system(s4.S, 2)).order == 1
    assert hyperfocal_subgroup(s4.F) == s4.V4
    assert hyperfocal_subgroup(s4.F) == s4.S.intersection(op_residual(s4.G.whole, 2))
    assert hyperfocal_subgroup(ex74.F) == ex74.U


def test_hyperfocal_requires_saturation():
    from fusionprod.catalog import klein_nonsaturated_fixture
    with pytest.raises(FusionError):
        hyperfocal_subgroup(klein_nonsaturated_fixture().system)


def test_op_residual(s4):
    Op = op_residual_subsystem(inner_system(s4.S, 2))
    assert Op.carrier.order == 1
    assert systems_equal(op_residual_subsystem(s4.F), s4.F0)
    assert systems_equal(op_residual_subsystem(s4.F, s4.S), s4.F)
    with pytest.raises(FusionError):
        op_residual_subsystem(s4.F, s4.sub("(1 3)", "(2 4)"))


def test_op_residual_idempotent(catalog_cases):
    for case in catalog_cases.values():
        Op = op_residual_subsystem(case.F)
        assert systems_equal(op_residual_subsystem(Op), Op), case.name


def test_verify_s4(inst, s4):
    report = verify_main_theorem(inst, [s4.F])
    assert report.passed and not report.witnesses()
    assert set(report.checks) >= {"saturated", "op_identity", "uniqueness"}


def test_verify_trivial_product(s4):
    report = verify_main_theorem(ProductInstance(s4.F, s4.F, s4.S))
    assert report.passed


def test_verify_gl23(catalog_cases):
    case = catalog_cases["gl23sl23"]
    assert case.S0.order == 8 and case.T.order == 16
    report = verify_main_theorem(case.instance, case.candidate_family())
    assert report.passed
    assert systems_equal(case.instance.product, case.F)


def test_uniqueness_with_extra_candidates(s4):
    # F_S(S) is saturated on S but its O^2 is trivial, so it is not a rival; a rival
    # would have to be saturated with O^2 = F0, and F_S(S4) is the only one here
    inst = ProductInstance(s4.F, s4.F0, s4.S)
    report = verify_main_theorem(inst, [inner_system(s4.S, 2), s4.F])
    assert report.passed


def test_containment_chain(catalog_cases):
    from fusionprod.fusion import is_subsystem
    for case in catalog_cases.values():
        D = case.instance.product
        assert is_subsystem(case.F0, D) and is_subsystem(D, case.F), case.name


def test_automizer_oracle_in_group_cases(catalog_cases):
    for case in catalog_cases.values():
        inst = case.instance
        for P in inst.T.all_subgroups:
            if is_centric(inst.F0, inst.part(P)):
                oracle = AutomorphismGroup.induced(case.normal, P).op_residual(case.prime)
                assert a_circ(inst, P) == oracle, (case.name, P.order)
