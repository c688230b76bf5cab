"""The product ``F0 T`` of a normal subsystem with a p-subgroup.

``F0 T`` is generated on ``T`` by the groups ``A°(P)`` for the subgroups
``P <= T`` whose intersection ``P0 = P ∩ S0`` is centric in ``F0``, where
``A°(P)`` is generated by the automorphisms of order prime to ``p`` that move
``P`` only inside ``P0`` and restrict to ``F0``-automorphisms of ``P0``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .fusion import (
    Check,
    FusionError,
    FusionSystem,
    generated_subsystem,
    is_centric,
    is_fully_normalized,
    is_normal_subsystem,
    is_saturated,
    is_subsystem,
    op_of_aut,
    systems_equal,
)
from .groups import AutomorphismGroup, Morphism, Subgroup, identity_morphism, normalizer


class ProductInstance:
    """``F`` saturated on ``S``, ``F0`` normal in ``F`` on ``S0``, and ``S0 <= T <= S``."""

    def __init__(self, ambient: FusionSystem, normal: FusionSystem, carrier: Subgroup,
                 check: bool = True):
        self.F = ambient
        self.F0 = normal
        self.T = carrier
        self.prime = ambient.prime
        self._acirc: dict[Subgroup, AutomorphismGroup] = {}
        self._wp: dict[Subgroup, Morphism | None] = {}
        if not (self.S0 <= carrier <= self.S):
            raise FusionError("carrier must satisfy S0 <= T <= S")
        if check:
            res = is_normal_subsystem(ambient, normal)
            if not res:
                raise FusionError(f"F0 is not normal in F ({res.detail})")

    @classmethod
    def over(cls, ambient: FusionSystem, normal: FusionSystem, R: Subgroup,
             check: bool = True) -> ProductInstance:
        """Instance with carrier ``S0 R`` for an arbitrary ``R <= S``."""
        T = normal.carrier.join(R)
        return cls(ambient, normal, T, check=check)

    @property
    def S(self) -> Subgroup:
        return self.F.carrier

    @property
    def S0(self) -> Subgroup:
        return self.F0.carrier

    def part(self, P: Subgroup) -> Subgroup:
        """``P0 = P ∩ S0``."""
        return P.intersection(self.S0)

    @cached_property
    def product(self) -> FusionSystem:
        return product_subsystem(self)

    def __repr__(self):
        return (f"<ProductInstance p={self.prime} |S|={self.S.order} |S0|={self.S0.order} "
                f"|T|={self.T.order}>")


def _check_in_T(inst: ProductInstance, P: Subgroup):
    if not P <= inst.T:
        raise FusionError("P must be a subgroup of T")


def a_circ_generators(inst: ProductInstance, P: Subgroup) -> list[Morphism]:
    """p'-automorphisms phi of P with [P, phi] <= P0 and phi|P0 in Aut_F0(P0)."""
    F, F0, p = inst.F, inst.F0, inst.prime
    G = P.parent
    P0 = inst.part(P)
    p0 = P0.memberset
    autF0 = F0.aut(P0).elements
    out = []
    for phi in F.aut(P).elements:
        if phi.order() % p == 0:
            continue
        if not all(G.mul(G.inv(x), phi(x)) in p0 for x in P.members):
            continue
        if phi.restrict(P0) in autF0:
            out.append(phi)
    return out


def a_circ(inst: ProductInstance, P: Subgroup) -> AutomorphismGroup:
    """``A°(P)``."""
    _check_in_T(inst, P)
    cache = inst._acirc
    if P not in cache:
        cache[P] = AutomorphismGroup.generated_by(P, a_circ_generators(inst, P))
    return cache[P]


def a_full(inst: ProductInstance, P: Subgroup) -> AutomorphismGroup:
    """``A(P) = Aut_T(P) A°(P)``."""
    _check_in_T(inst, P)
    return AutomorphismGroup.induced(inst.T, P).product(a_circ(inst, P))


def product_subsystem(inst: ProductInstance) -> FusionSystem:
    """``F0 T = < A°(P) : P <= T, P ∩ S0 centric in F0 >_T``."""
    gens: set[Morphism] = set()
    for P in inst.T.all_subgroups:
        if is_centric(inst.F0, inst.part(P)):
            gens.update(a_circ(inst, P).elements)
    return generated_subsystem(inst.T, gens, inst.prime, "product")


# ---------------------------------------------------------------------------
# well-placed subgroups

@dataclass
class WellPlacedCertificate:
    subgroup: Subgroup
    chain: list[Subgroup]
    # per level: (N_i fully F0-normalized, Aut_T(N_i) Sylow in Aut_D(N_i),
    #             N_{Aut_T(N_i+1)}(N_i) Sylow in N_{Aut_D(N_i+1)}(N_i))
    levels: list[tuple[bool, bool, bool]]
    method: str = "check"

    @property
    def valid(self) -> bool:
        return all(all(lv) for lv in self.levels)

    def __bool__(self):
        return self.valid


def normalizer_chain(S0: Subgroup, P0: Subgroup) -> list[Subgroup]:
    chain = [P0]
    while chain[-1] is not S0:
        nxt = normalizer(S0, chain[-1])
        if nxt is chain[-1]:
            raise FusionError("normalizer chain stalled below S0")
        chain.append(nxt)
    return chain


def is_well_placed(inst: ProductInstance, P0: Subgroup) -> WellPlacedCertificate:
    S0 = inst.S0
    if not P0 <= S0:
        raise FusionError("P0 must be a subgroup of S0")
    D, F0, p = inst.product, inst.F0, inst.prime
    chain = normalizer_chain(S0, P0)
    levels = []
    for i, N in enumerate(chain):
        Nn = chain[i + 1] if i + 1 < len(chain) else N
        c1 = is_fully_normalized(F0, N)
        c2 = D.aut(N).has_sylow(D.aut_carrier(N), p)
        c3 = D.aut(Nn).stabilizer(N).has_sylow(D.aut_carrier(Nn).stabilizer(N), p)
        levels.append((c1, c2, c3))
    return WellPlacedCertificate(P0, chain, levels)


def find_well_placed(inst: ProductInstance, Q0: Subgroup) -> tuple[Morphism, WellPlacedCertificate]:
    """A morphism ``phi`` in ``Hom_D(Q0, S0)`` with ``Q0 phi`` well-placed.

    Follows the maximal-counterexample recursion: make ``Q0`` fully
    ``F0``-normalized, make ``N_S0(Q0)`` well-placed by recursion, then twist by
    an automorphism of that normalizer aligning Sylow subgroups.  Falls back to
    scanning the whole ``D``-class if the recursion's choice fails.
    """
    S0 = inst.S0
    if not Q0 <= S0:
        raise FusionError("Q0 must be a subgroup of S0")
    phi = _well_placed_recursive(inst, Q0)
    cert = is_well_placed(inst, phi.codomain) if phi is not None else None
    if cert is not None and cert.valid:
        cert.method = "recursion"
        return phi, cert
    D = inst.product
    for f in sorted(D.homs[Q0], key=lambda m: (m.codomain.sort_key, m.images)):
        if f.codomain <= S0:
            cert = is_well_placed(inst, f.codomain)
            if cert.valid:
                cert.method = "exhaustive"
                return f, cert
    raise FusionError("no well-placed conjugate found")


def _well_placed_recursive(inst: ProductInstance, Q0: Subgroup) -> Morphism | None:
    S0, D, F0, p = inst.S0, inst.product, inst.F0, inst.prime
    cache = inst._wp
    if Q0 in cache:
        return cache[Q0]
    if Q0 is S0:
        cache[Q0] = identity_morphism(S0)
        return cache[Q0]
    # move to a fully F0-normalized F0-conjugate
    alpha = min((f for f in F0.homs[Q0] if is_fully_normalized(F0, f.codomain)),
                key=lambda m: (m.codomain.sort_key, m.images))
    Q1 = alpha.codomain
    R1 = normalizer(S0, Q1)
    beta = _well_placed_recursive(inst, R1)
    if beta is None:
        cache[Q0] = None
        return None
    Q2 = beta.restrict(Q1).codomain
    R2 = beta.codomain
    if normalizer(S0, Q2) is not R2:
        cache[Q0] = None
        return None
    autD, autT = D.aut(R2), D.aut_carrier(R2)
    psi = None
    for cand in sorted(autD.elements, key=lambda m: m.images):
        P = cand.restrict(Q2).codomain
        if autD.stabilizer(P).has_sylow(autT.stabilizer(P), p):
            psi = cand
            break
    if psi is None:
        cache[Q0] = None
        return None
    total = alpha.then(beta.restrict(Q1)).then(psi.restrict(Q2))
    cache[Q0] = total
    return total


# ---------------------------------------------------------------------------
# hyperfocal subgroup and O^p

def hyperfocal_subgroup(F: FusionSystem) -> Subgroup:
    """``hyp(F) = < [P, O^p(Aut_F(P))] : P <= S >``."""
    if "hyp" in F._cache:
        return F._cache["hyp"]
    if not is_saturated(F):
        raise FusionError("hyperfocal subgroup requires a saturated fusion system")
    G = F.group
    gens = set()
    for P in F.subgroups:
        for phi in op_of_aut(F, P).elements:
            for x in P.members:
                gens.add(G.mul(G.inv(x), phi(x)))
    F._cache["hyp"] = G.generate(gens)
    return F._cache["hyp"]


def op_residual_subsystem(F: FusionSystem, T: Subgroup | None = None) -> FusionSystem:
    """``O^p(F)``; with ``T`` given, ``F_T = < O^p(Aut_F(P)) : P <= T >_T``."""
    hyp = hyperfocal_subgroup(F)
    if T is None:
        key = "Op(F)"
        if key not in F._cache:
            gens = [f for P in hyp.all_subgroups for f in op_of_aut(F, P).elements]
            F._cache[key] = generated_subsystem(hyp, gens, F.prime, "Op")
        return F._cache[key]
    if not (hyp <= T <= F.carrier):
        raise FusionError("T must contain hyp(F) and lie in the carrier")
    gens = [f for P in T.all_subgroups for f in op_of_aut(F, P).elements]
    return generated_subsystem(T, gens, F.prime, "F_T")


# ---------------------------------------------------------------------------
# verification bundle

@dataclass
class VerificationReport:
    summary: str
    checks: dict[str, Check] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def __bool__(self):
        return self.passed

    def witnesses(self) -> dict[str, object]:
        return {k: c.witness for k, c in self.checks.items() if not c.ok}

    def lines(self) -> list[str]:
        out = [f"{name} = {'true' if c.ok else 'false'}" for name, c in self.checks.items()]
        for name, c in self.checks.items():
            if not c.ok:
                out.append(f"witness.{name} = {c.detail} {c.witness!r}")
        return out


def _timed(report: VerificationReport, name: str, fn):
    t = time.perf_counter()
    res = fn()
    report.timing[name] = time.perf_counter() - t
    report.checks[name] = res if isinstance(res, Check) else Check(bool(res))
    return res


def verify_main_theorem(inst: ProductInstance,
                        candidates: Sequence[FusionSystem] | None = None) -> VerificationReport:
    report = VerificationReport(repr(inst))
    t0 = time.perf_counter()
    D = inst.product
    report.timing["construct"] = time.perf_counter() - t0
    F, F0, T = inst.F, inst.F0, inst.T

    def containment():
        a = is_subsystem(F0, D)
        if not a:
            return Check(False, a.witness, "F0 not contained in F0T")
        return is_subsystem(D, F)

    def saturated():
        rep = is_saturated(D)
        return Check(rep.saturated, rep.witnesses, "classes without fully automized receptive member")

    def op_identity():
        return systems_equal(op_residual_subsystem(D), op_residual_subsystem(F0))

    def acirc_equals():
        for P in T.all_subgroups:
            if is_centric(F0, inst.part(P)) and a_circ(inst, P) != op_of_aut(D, P):
                return Check(False, P, "A°(P) != O^p(Aut_D(P))")
        return Check(True)

    def op_in_acirc():
        for P in T.all_subgroups:
            if not op_of_aut(D, P) <= a_circ(inst, P):
                return Check(False, P, "O^p(Aut_D(P)) not in A°(P)")
        return Check(True)

    _timed(report, "containment", containment)
    _timed(report, "saturated", saturated)
    _timed(report, "op_identity", op_identity)
    _timed(report, "acirc_equals_op_aut", acirc_equals)
    _timed(report, "op_aut_in_acirc", op_in_acirc)
    if candidates:
        _timed(report, "uniqueness", lambda: check_uniqueness(inst, candidates))
    return report


def check_uniqueness(inst: ProductInstance, candidates: Iterable[FusionSystem]) -> Check:
    """Every qualifying candidate (saturated, on T, inside F, same O^p as F0) equals F0T."""
    D, F, F0 = inst.product, inst.F, inst.F0
    target = op_residual_subsystem(F0)
    qualified = 0
    for i, E in enumerate(candidates):
        if E.carrier is not inst.T or not is_subsystem(E, F) or not is_saturated(E):
            continue
        if not systems_equal(op_residual_subsystem(E), target):
            continue
        qualified += 1
        eq = systems_equal(E, D)
        if not eq:
            return Check(False, (i, eq.witness), "qualifying candidate differs from F0T")
    return Check(True, None, f"{qualified} qualifying candidates")
