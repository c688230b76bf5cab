"""Exhaustive property checks on a product instance.

Each check walks every relevant subgroup and morphism of one instance and
collects counterexamples.  They are meant for small instances; nothing here
is needed to build the product itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .fusion import (
    FusionError,
    FusionSystem,
    compute_N_phi,
    extensions,
    inner_system,
    is_centric,
    is_fully_automized,
    is_fully_normalized,
    is_strongly_closed,
    quotient_system,
    systems_equal,
)
from .groups import (
    AutomorphismGroup,
    Morphism,
    Subgroup,
    centralizer,
    conjugation_morphism,
    normalizer,
)
from .product import ProductInstance, is_well_placed, op_residual_subsystem, product_subsystem


@dataclass
class PropertyResult:
    name: str
    cases: int = 0
    counterexamples: list = field(default_factory=list)
    skipped: str = ""

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def __bool__(self):
        return self.ok

    def fail(self, *witness):
        self.counterexamples.append(witness)

    def line(self) -> str:
        status = "ok" if self.ok else f"FAILED ({len(self.counterexamples)} counterexamples)"
        extra = f" [{self.skipped}]" if self.skipped else ""
        return f"{self.name}: {status}, {self.cases} cases{extra}"


def _img_set(f: Morphism, X: Subgroup) -> Subgroup:
    return X.parent.intern(f(x) for x in X.members)


def _conj_sub(P: Subgroup, t: int) -> Subgroup:
    return P.conjugate(t)


# ---------------------------------------------------------------------------
# preliminaries on an arbitrary saturated system

def check_transport(F: FusionSystem) -> PropertyResult:
    """For ``P`` normal in ``X`` and ``psi`` in ``Hom_F(X, S)``: ``(c_g|_P) phi* = c_{g psi}|_{P psi}``."""
    res = PropertyResult("transport of conjugations")
    for X in F.subgroups:
        for P in X.all_subgroups:
            if not P.is_normal_in(X):
                continue
            for psi in F.homs[X]:
                phi = psi.restrict(P).as_iso()
                Q = phi.codomain
                inv = phi.inverse()
                for g in X.members:
                    res.cases += 1
                    lhs = inv.then(conjugation_morphism(g, P, P)).then(phi)
                    if lhs != conjugation_morphism(psi(g), Q, Q):
                        res.fail(X, P, psi, g)
                if not X <= compute_N_phi(F, phi):
                    res.fail(X, P, psi, "X not in N_phi")
                Xpsi = _img_set(psi, X)
                lhs = {inv.then(a).then(phi) for a in AutomorphismGroup.induced(X, P).elements}
                if lhs != AutomorphismGroup.induced(Xpsi, Q).elements:
                    res.fail(X, P, psi, "Aut_X(P) transport")
    return res


def check_n_phi_in_subsystem(F: FusionSystem, E: FusionSystem) -> PropertyResult:
    """For ``E`` a subsystem on ``R`` and ``P phi`` fully automized in ``E``: ``N_phi^E = N_phi ∩ R``."""
    res = PropertyResult("N_phi restricted to a subsystem")
    R = E.carrier
    for P in E.subgroups:
        for phi in E.homs[P]:
            if not is_fully_automized(E, phi.codomain):
                continue
            res.cases += 1
            N = compute_N_phi(F, phi)
            NR = N.intersection(R)
            if compute_N_phi(E, phi) != NR:
                res.fail(P, phi, "N_phi^E")
            inv = phi.inverse()
            autR = E.aut_carrier(phi.codomain).elements
            for g in normalizer(NR, P).members:
                if inv.then(conjugation_morphism(g, P, P)).then(phi) not in autR:
                    res.fail(P, phi, g)
                    break
    return res


def check_commutator_centralizes(F: FusionSystem) -> PropertyResult:
    """``Q`` normal in ``P``, ``beta|_Q = gamma|_Q`` with ``gamma`` in ``Aut_F(P)``:
    ``[C_P(gamma), beta] <= C_S(Q beta)``."""
    res = PropertyResult("commutator with two extensions")
    S = F.carrier
    G = F.group
    for P in F.subgroups:
        normals = [Q for Q in P.all_subgroups if Q.is_normal_in(P)]
        for gamma in F.aut(P).elements:
            fixed = [x for x in P.members if gamma(x) == x]
            for Q in normals:
                for beta in F.homs[P]:
                    if any(beta(x) != gamma(x) for x in Q.members):
                        continue
                    res.cases += 1
                    C = centralizer(S, _img_set(beta, Q)).memberset
                    for x in fixed:
                        if G.mul(G.inv(x), beta(x)) not in C:
                            res.fail(P, Q, gamma, beta, x)
                            break
    return res


# ---------------------------------------------------------------------------
# the normal subsystem inside the ambient system

def check_centric_classes(inst: ProductInstance) -> PropertyResult:
    """Every ``F``-conjugate of an ``F0``-centric subgroup is ``F0``-centric."""
    res = PropertyResult("F-conjugates of F0-centric subgroups")
    F, F0 = inst.F, inst.F0
    for P0 in F0.subgroups:
        if not is_centric(F0, P0):
            continue
        for Q in F.conjugacy_class(P0):
            res.cases += 1
            if not (Q <= inst.S0 and is_centric(F0, Q)):
                res.fail(P0, Q)
    return res


def check_normalized_images(inst: ProductInstance) -> PropertyResult:
    """``P0`` fully ``F0``-normalized and ``alpha`` in ``Hom_F(N_S0(P0), S0)``:
    ``P0 alpha`` is fully ``F0``-normalized and ``N_S0(P0) alpha = N_S0(P0 alpha)``."""
    res = PropertyResult("images of fully F0-normalized subgroups")
    F, F0, S0 = inst.F, inst.F0, inst.S0
    for P0 in F0.subgroups:
        if not is_fully_normalized(F0, P0):
            continue
        N = normalizer(S0, P0)
        for alpha in F.homs[N]:
            if not alpha.codomain <= S0:
                continue
            res.cases += 1
            image = _img_set(alpha, P0)
            if not is_fully_normalized(F0, image):
                res.fail(P0, alpha, "not fully normalized")
            elif alpha.codomain != normalizer(S0, image):
                res.fail(P0, alpha, "normalizer not carried")
    return res


def check_fully_normalized_descends(inst: ProductInstance) -> PropertyResult:
    """``Q0 <= S0`` fully ``F``-normalized is fully ``F0``-normalized."""
    res = PropertyResult("fully normalized in F implies in F0")
    F, F0 = inst.F, inst.F0
    for Q0 in F0.subgroups:
        if is_fully_normalized(F, Q0):
            res.cases += 1
            if not is_fully_normalized(F0, Q0):
                res.fail(Q0)
    return res


# ---------------------------------------------------------------------------
# the product on subgroups of S0

def _decompositions(inst: ProductInstance, alpha: Morphism) -> list[tuple[int, Morphism]]:
    """All ``(t, alpha0)`` with ``t`` in ``T`` and ``alpha = c_t alpha0``, ``alpha0`` in ``F0``."""
    F0, T = inst.F0, inst.T
    G = T.parent
    P = alpha.domain
    out = []
    for t in T.members:
        Pt = _conj_sub(P, t)
        for a0 in F0.homs[Pt]:
            if all(a0(G.conj(x, t)) == alpha(x) for x in P.members):
                out.append((t, a0))
    return out


def check_decomposition(inst: ProductInstance) -> PropertyResult:
    """Morphisms of the product between subgroups of ``S0`` factor as ``c_t alpha0``,
    and any such factorization has ``N_alpha^t <= N_alpha0``."""
    res = PropertyResult("factorization through T and F0")
    D, F = inst.product, inst.F
    for P in inst.F0.subgroups:
        for alpha in D.homs[P]:
            if not alpha.codomain <= inst.S0:
                continue
            res.cases += 1
            decs = _decompositions(inst, alpha)
            if not decs:
                res.fail(P, alpha, "no factorization")
                continue
            N = compute_N_phi(F, alpha)
            for t, a0 in decs:
                if not _conj_sub(N, t) <= compute_N_phi(F, a0):
                    res.fail(P, alpha, t, a0)
    return res


def check_extension_to_N_phi(inst: ProductInstance) -> PropertyResult:
    """``phi`` in ``Hom_D(P0, S0)`` with ``P0 phi`` fully ``F0``-normalized extends to
    ``Hom_D(N_phi ∩ S0, S0)``."""
    res = PropertyResult("extension inside S0")
    D, F, F0, S0 = inst.product, inst.F, inst.F0, inst.S0
    for P0 in F0.subgroups:
        for phi in D.homs[P0]:
            if not (phi.codomain <= S0 and is_fully_normalized(F0, phi.codomain)):
                continue
            res.cases += 1
            X = compute_N_phi(F, phi).intersection(S0)
            if not any(f.codomain <= S0 for f in extensions(D, phi, X)):
                res.fail(P0, phi, X)
    return res


def check_well_placed_automizers(inst: ProductInstance) -> PropertyResult:
    """For well-placed ``P0``: ``Aut_D(P0) = Aut_T(P0) Aut_F0(P0)``."""
    res = PropertyResult("automizers of well-placed subgroups")
    D, F0, T = inst.product, inst.F0, inst.T
    for P0 in F0.subgroups:
        if not is_well_placed(inst, P0).valid:
            continue
        res.cases += 1
        prod = AutomorphismGroup.induced(T, P0).product(F0.aut(P0))
        if D.aut(P0) != prod:
            res.fail(P0, D.aut(P0).order, prod.order)
    return res


def check_op_automizers_on_S0(inst: ProductInstance) -> PropertyResult:
    """For every ``P0 <= S0``: ``O^p(Aut_D(P0)) = O^p(Aut_F0(P0))``."""
    res = PropertyResult("O^p of automizers inside S0")
    D, F0, p = inst.product, inst.F0, inst.F.prime
    for P0 in F0.subgroups:
        res.cases += 1
        if D.aut(P0).op_residual(p) != F0.aut(P0).op_residual(p):
            res.fail(P0)
    return res


# ---------------------------------------------------------------------------
# quotients

def check_quotient_by_normal(inst: ProductInstance) -> PropertyResult:
    """``(F0 T)/F0 = F_T(T)/F0`` inside ``F/S0``."""
    res = PropertyResult("product modulo the normal subsystem")
    F, T = inst.F, inst.T
    Q = quotient_system(F, inst.S0)
    res.cases = 1
    lhs = Q.image(inst.product)
    rhs = Q.image(inner_system(T, F.prime))
    if not systems_equal(lhs, rhs):
        res.fail("quotients differ")
    return res


def check_quotient_by_strongly_closed(inst: ProductInstance,
                                      kernels: Iterable[Subgroup] | None = None) -> PropertyResult:
    """``F0 R / R = F0 / R`` for strongly closed ``R``; ``F0 R`` lives on ``S0 R``."""
    res = PropertyResult("product with R modulo R")
    F, F0 = inst.F, inst.F0
    if kernels is None:
        kernels = {inst.S0, inst.T}
    skipped = []
    for R in sorted(set(kernels)):
        if not is_strongly_closed(F, R):
            skipped.append(R.order)
            continue
        res.cases += 1
        sub = ProductInstance.over(F, F0, R)
        Q = quotient_system(F, R)
        if not systems_equal(Q.image(product_subsystem(sub)), Q.image(F0)):
            res.fail(R)
    if skipped:
        res.skipped = f"not strongly closed: orders {skipped}"
    return res


def check_focal_products(F: FusionSystem, carriers: Iterable[Subgroup]) -> PropertyResult:
    """``F_T = O^p(F) T`` for each carrier ``T`` containing the hyperfocal subgroup."""
    res = PropertyResult("F_T equals O^p(F)T")
    Op = op_residual_subsystem(F)
    for T in sorted(set(carriers)):
        res.cases += 1
        try:
            inst = ProductInstance(F, Op, T)
        except FusionError as exc:
            res.fail(T, str(exc))
            continue
        if not systems_equal(op_residual_subsystem(F, T), product_subsystem(inst)):
            res.fail(T)
    return res


# ---------------------------------------------------------------------------

def instance_checks(inst: ProductInstance) -> list[Callable[[], PropertyResult]]:
    F = inst.F
    return [
        lambda: check_transport(F),
        lambda: check_n_phi_in_subsystem(F, inst.F0),
        lambda: check_n_phi_in_subsystem(F, inst.product),
        lambda: check_commutator_centralizes(F),
        lambda: check_centric_classes(inst),
        lambda: check_normalized_images(inst),
        lambda: check_fully_normalized_descends(inst),
        lambda: check_decomposition(inst),
        lambda: check_extension_to_N_phi(inst),
        lambda: check_well_placed_automizers(inst),
        lambda: check_op_automizers_on_S0(inst),
    ]


def run_property_suite(inst: ProductInstance) -> list[PropertyResult]:
    return [check() for check in instance_checks(inst)]
