"""Group-realised product instances used as a differential-test corpus.

For ``F = F_S(G)`` and ``F0 = F_{S∩N}(N)`` with ``N`` normal in ``G``, the
product on ``T`` is ``F_T(NT)``; :func:`oracle_product` computes that side
directly from the group, independently of the generated-subsystem closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .fusion import FusionError, FusionSystem, fusion_system_of_group, generated_subsystem
from .groups import (
    FiniteGroup,
    Morphism,
    Subgroup,
    as_subgroup,
    conjugation_morphism,
    op_core,
    op_residual,
    overgroups,
    p_part,
    perm_element,
    perm_group_from_cycles,
    sylow_subgroup,
)
from .linear import GF, FixtureError, VectorSpace, affine_group, matrix_group
from .product import ProductInstance, op_residual_subsystem


def oracle_product(G: FiniteGroup | Subgroup, N: Subgroup, T: Subgroup, p: int) -> FusionSystem:
    """``F_T(NT)``."""
    H = as_subgroup(G)
    if not N.is_normal_in(H):
        raise FusionError("N is not normal in G")
    NT = N.join(T)
    if not T.is_p_group(p) or T.order != p_part(NT.order, p):
        raise FusionError("T is not a Sylow p-subgroup of NT")
    return fusion_system_of_group(NT, T, p)


@dataclass
class CatalogCase:
    name: str
    group: Subgroup
    normal: Subgroup
    prime: int
    carrier: Subgroup | None = None  # None: the Sylow subgroup of G
    expected: dict[str, bool] = field(default_factory=lambda: {
        "oracle_equal": True, "saturated": True, "op_identity": True})
    notes: str = ""
    extras: dict = field(default_factory=dict)

    @cached_property
    def sylow(self) -> Subgroup:
        S = sylow_subgroup(self.group, self.prime)
        if self.carrier is None or self.carrier <= S:
            return S
        # a Sylow subgroup containing the requested carrier
        return min(S.conjugate(g) for g in self.group.members if self.carrier <= S.conjugate(g))

    @property
    def T(self) -> Subgroup:
        return self.carrier if self.carrier is not None else self.sylow

    @property
    def S0(self) -> Subgroup:
        return self.sylow.intersection(self.normal)

    @cached_property
    def F(self) -> FusionSystem:
        return fusion_system_of_group(self.group, self.sylow, self.prime)

    @cached_property
    def F0(self) -> FusionSystem:
        return fusion_system_of_group(self.normal, self.S0, self.prime)

    @cached_property
    def instance(self) -> ProductInstance:
        return ProductInstance(self.F, self.F0, self.T)

    @cached_property
    def oracle(self) -> FusionSystem:
        return oracle_product(self.group, self.normal, self.T, self.prime)

    def candidate_family(self) -> list[FusionSystem]:
        return candidate_family(self.group, self.T, self.prime)


def candidate_family(G: Subgroup, T: Subgroup, p: int) -> list[FusionSystem]:
    """``F_T(M)`` for every ``M <= G`` containing ``T`` as a Sylow subgroup."""
    return [fusion_system_of_group(M, T, p) for M in overgroups(G, T)
            if p_part(M.order, p) == T.order]


# ---------------------------------------------------------------------------
# worked-example fixtures

def _field_and_lambda(q: int, lam: int | None) -> tuple[GF, int]:
    if q < 3:
        raise FixtureError("q >= 3 is required")
    F = GF(q)
    lam = F.primitive_element() if lam is None else lam
    if lam in (0, 1) or not 0 < lam < q:
        raise FixtureError("need 1 != lambda in GF(q)^x")
    return F, lam


@dataclass
class Example74:
    F: FusionSystem
    G_sys: FusionSystem
    F0: FusionSystem
    S: Subgroup
    U: Subgroup
    W1: Subgroup
    W2: Subgroup
    G1: Subgroup
    G2: Subgroup
    ambient: FiniteGroup
    alpha1: int
    alpha2: int


def fixture_example_7_4(q: int = 3, lam: int | None = None, dim: int = 2) -> Example74:
    """Two group systems on ``S = GF(q)^dim`` with equal ``O^p`` but different fusion.

    ``U = <e1>``, ``W1 = <e2..en>``, ``W2 = <e1+e2, e3..en>``; ``alpha_i`` is
    ``lambda`` on ``U`` and the identity on ``W_i``.
    """
    if dim < 2:
        raise FixtureError("dimension >= 2 is required")
    K, lam = _field_and_lambda(q, lam)
    e = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    u = [e[0]]
    w1 = e[1:]
    w2 = [tuple(1 if j in (0, 1) else 0 for j in range(dim))] + e[2:]
    V = VectorSpace(K, dim)
    a1 = V.scalar_on(lam, u, w1)
    a2 = V.scalar_on(lam, u, w2)
    aff = affine_group(q, dim, [a1, a2], names=["alpha1", "alpha2"], name=f"Ex7.4(q={q})")
    G = aff.group
    S = aff.translations(e)
    U = aff.translations(u)
    W1 = aff.translations(w1)
    W2 = aff.translations(w2)
    G1 = G.generate(S.generators + (aff.linear["alpha1"],))
    G2 = G.generate(S.generators + (aff.linear["alpha2"],))
    p = K.p
    F = fusion_system_of_group(G1, S, p)
    Gs = fusion_system_of_group(G2, S, p)
    F0 = op_residual_subsystem(F)
    aff.handles.update(S=S, U=U, W1=W1, W2=W2)
    return Example74(F, Gs, F0, S, U, W1, W2, G1, G2, G,
                     aff.linear["alpha1"], aff.linear["alpha2"])


@dataclass
class Example75:
    F: FusionSystem
    F0: FusionSystem
    P: Subgroup
    S: Subgroup
    S0: Subgroup
    G: Subgroup
    N: Subgroup
    alpha: int
    beta: int
    handles: dict[str, Subgroup]

    @cached_property
    def instance(self) -> ProductInstance:
        return ProductInstance(self.F, self.F0, self.S)

    def alpha_on_P(self):
        return conjugation_morphism(self.alpha, self.P, self.P)


def fixture_example_7_5(q: int = 3, lam: int | None = None) -> Example75:
    """``S = U ⊕ V ⊕ W`` (one-dimensional summands), ``S0 = U ⊕ V``, ``W' = <v + w>``."""
    K, lam = _field_and_lambda(q, lam)
    V3 = VectorSpace(K, 3)
    u, v, w = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    vw = (0, 1, 1)
    alpha = V3.scalar_on(lam, [u], [v, w])
    beta = V3.scalar_on(lam, [u, v], [vw])
    aff = affine_group(q, 3, [alpha, beta], names=["alpha", "beta"], name=f"Ex7.5(q={q})")
    G = aff.group
    a, b = aff.linear["alpha"], aff.linear["beta"]
    S = aff.translations([u, v, w])
    S0 = aff.translations([u, v])
    N = G.generate(S0.generators + (b,))
    if not N.is_normal_in(G.whole):
        raise FixtureError("N is not normal in G")
    P = aff.translations([u, w])
    handles = dict(U=aff.translations([u]), V=aff.translations([v]), W=aff.translations([w]),
                   S0=S0, Wp=aff.translations([vw]), P=P, S=S)
    aff.handles.update(handles)
    p = K.p
    F = fusion_system_of_group(G, S, p)
    F0 = fusion_system_of_group(N, S0, p)
    return Example75(F, F0, P, S, S0, G.whole, N, a, b, handles)


@dataclass
class Example71:
    group: Subgroup
    T: Subgroup
    F: FusionSystem
    F0: FusionSystem


def example_7_1() -> Example71:
    """``S3 x S3`` at ``p = 3``: normal Sylow ``T``, ``F0 = F_T(T)`` inside ``F = F_T(G)``."""
    G = perm_group_from_cycles(6, ["(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)"], name="S3xS3")
    T = op_core(G.whole, 3)
    return Example71(G.whole, T, fusion_system_of_group(G, T, 3),
                     fusion_system_of_group(T, T, 3))


@dataclass
class KleinFixture:
    system: FusionSystem
    a: Subgroup
    b: Subgroup


def klein_nonsaturated_fixture() -> KleinFixture:
    """``C2 x C2 = {1, a, b, ab}`` with the single extra generator ``<a> -> <b>``."""
    G = perm_group_from_cycles(4, ["(1 2)", "(3 4)"], name="C2xC2")
    a = perm_element(G, "(1 2)")
    b = perm_element(G, "(3 4)")
    A, B = G.generate([a]), G.generate([b])
    gen = Morphism(A, B, tuple(b if x == a else x for x in A.members))
    return KleinFixture(generated_subsystem(G.whole, [gen], 2), A, B)


# ---------------------------------------------------------------------------
# named groups

def symmetric4() -> FiniteGroup:
    return perm_group_from_cycles(4, ["(1 2 3 4)", "(1 2)"], name="S4")


def _sub(G: FiniteGroup, *cycles: str) -> Subgroup:
    return G.generate(perm_element(G, c) for c in cycles)


def case_s4a4() -> CatalogCase:
    G = symmetric4()
    return CatalogCase("s4a4", G.whole, _sub(G, "(1 2 3)", "(1 2)(3 4)"), 2)


def case_s4c2a4() -> CatalogCase:
    G = perm_group_from_cycles(6, ["(1 2 3 4)", "(1 2)", "(5 6)"], name="S4xC2")
    N = _sub(G, "(1 2 3)", "(1 2)(3 4)")
    T = _sub(G, "(1 2)(3 4)", "(1 3)(2 4)", "(5 6)")
    return CatalogCase("s4c2a4", G.whole, N, 2, carrier=T, notes="T = V4 x C2 proper in S")


def _gl23() -> FiniteGroup:
    return matrix_group(3, [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (0, 1))],
                        name="GL(2,3)").group


def case_gl23sl23() -> CatalogCase:
    G = _gl23()
    V = VectorSpace(GF(3), 2)
    N = G.generate([G.index(V.linear_perm(((1, 1), (0, 1)))), G.index(V.linear_perm(((1, 0), (1, 1))))])
    return CatalogCase("gl23sl23", G.whole, N, 2)


def case_a4v4() -> CatalogCase:
    G = perm_group_from_cycles(4, ["(1 2 3)", "(1 2)(3 4)"], name="A4")
    return CatalogCase("a4v4", G.whole, _sub(G, "(1 2)(3 4)", "(1 3)(2 4)"), 2)


def case_sl23q8() -> CatalogCase:
    G = matrix_group(3, [((1, 1), (0, 1)), ((1, 0), (1, 1))], name="SL(2,3)").group
    return CatalogCase("sl23q8", G.whole, op_core(G.whole, 2), 2)


def case_ex71() -> CatalogCase:
    ex = example_7_1()
    return CatalogCase("ex71", ex.group, ex.T, 3, notes="G1 = G2 = S3 at p = 3")


def case_ex74(q: int = 3) -> CatalogCase:
    ex = fixture_example_7_4(q)
    N = op_residual(ex.G1, ex.F.prime)
    return CatalogCase("ex74" if q == 3 else f"ex74_q{q}", ex.G1, N, ex.F.prime,
                       notes="N = O^p(G1), F0 = O^p(F)", extras={"fixture": ex})


def case_ex75(q: int = 3) -> CatalogCase:
    ex = fixture_example_7_5(q)
    return CatalogCase("ex75" if q == 3 else f"ex75_q{q}", ex.G, ex.N, ex.F.prime,
                       notes="N = <S0, beta>", extras={"fixture": ex})


CASE_BUILDERS: dict[str, Callable[[], CatalogCase]] = {
    "s4a4": case_s4a4,
    "s4c2a4": case_s4c2a4,
    "gl23sl23": case_gl23sl23,
    "a4v4": case_a4v4,
    "sl23q8": case_sl23q8,
    "ex71": case_ex71,
    "ex74": case_ex74,
    "ex75": case_ex75,
}


def standard_catalog() -> list[CatalogCase]:
    return [build() for build in CASE_BUILDERS.values()]


def get_case(name: str) -> CatalogCase:
    try:
        return CASE_BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown catalog case {name!r}; known: {', '.join(CASE_BUILDERS)}") from None
