"""Explicit fusion systems on finite p-groups.

A :class:`FusionSystem` stores, for every subgroup ``P`` of its carrier, the
set of isomorphisms ``P -> P phi`` it contains.  Every other morphism is one of
these followed by an inclusion, so ``Hom(P, Q)`` is read off by filtering on
the image; divisibility holds by construction.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Any, Iterable

from .groups import (
    AutomorphismGroup,
    FiniteGroup,
    GroupError,
    Morphism,
    Subgroup,
    as_subgroup,
    center,
    centralizer,
    conjugation_morphism,
    identity_morphism,
    normalizer,
    p_part,
    sylow_subgroup,
)


class FusionError(GroupError):
    pass


@dataclass
class Check:
    """A yes/no answer with an optional witness explaining a "no"."""
    ok: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self):
        return self.ok


class FusionSystem:
    def __init__(self, prime: int, carrier: Subgroup, homs: dict[Subgroup, Iterable[Morphism]],
                 provenance: str = "generated"):
        if not carrier.is_p_group(prime):
            raise FusionError(f"carrier of order {carrier.order} is not a {prime}-group")
        self.prime = prime
        self.carrier = carrier
        self.subgroups: list[Subgroup] = carrier.all_subgroups
        self.homs: dict[Subgroup, frozenset[Morphism]] = {
            P: frozenset(homs.get(P, ())) for P in self.subgroups}
        self.provenance = provenance
        self._aut: dict[Subgroup, AutomorphismGroup] = {}
        self._autS: dict[Subgroup, AutomorphismGroup] = {}
        self._class: dict[Subgroup, frozenset[Subgroup]] = {}
        self._cache: dict[Any, Any] = {}

    def __repr__(self):
        return (f"<FusionSystem p={self.prime} on {self.carrier.order}-group, "
                f"{self.morphism_count()} isos, {self.provenance}>")

    @property
    def group(self) -> FiniteGroup:
        return self.carrier.parent

    def _check_sub(self, P: Subgroup):
        if not P <= self.carrier:
            raise FusionError("subgroup not contained in the carrier")

    def morphism_count(self) -> int:
        return sum(len(v) for v in self.homs.values())

    def contains(self, phi: Morphism) -> bool:
        return phi.domain in self.homs and phi.as_iso() in self.homs[phi.domain]

    def aut(self, P: Subgroup) -> AutomorphismGroup:
        """``Aut_F(P)``."""
        A = self._aut.get(P)
        if A is None:
            self._check_sub(P)
            A = AutomorphismGroup(P, (f for f in self.homs[P] if f.codomain is P))
            self._aut[P] = A
        return A

    def aut_carrier(self, P: Subgroup) -> AutomorphismGroup:
        """``Aut_S(P)`` for the carrier ``S``."""
        A = self._autS.get(P)
        if A is None:
            A = AutomorphismGroup.induced(self.carrier, P)
            self._autS[P] = A
        return A

    def isos(self, P: Subgroup, Q: Subgroup) -> list[Morphism]:
        return [f for f in self.homs[P] if f.codomain is Q]

    def conjugacy_class(self, P: Subgroup) -> frozenset[Subgroup]:
        c = self._class.get(P)
        if c is None:
            self._check_sub(P)
            c = frozenset(f.codomain for f in self.homs[P])
            self._class[P] = c
        return c

    def classes(self) -> list[list[Subgroup]]:
        seen: set[Subgroup] = set()
        out = []
        for P in self.subgroups:
            if P not in seen:
                cl = sorted(self.conjugacy_class(P))
                seen.update(cl)
                out.append(cl)
        return out

    def restrict_to(self, R: Subgroup, provenance: str = "restricted") -> FusionSystem:
        """The full subsystem on a subgroup ``R`` (morphisms between subgroups of ``R``)."""
        homs = {P: {f for f in self.homs[P] if f.codomain <= R} for P in R.all_subgroups}
        return FusionSystem(self.prime, R, homs, provenance)


# ---------------------------------------------------------------------------
# construction

def fusion_system_of_group(G: FiniteGroup | Subgroup, S: Subgroup, p: int) -> FusionSystem:
    """``F_S(G)``: conjugation maps by elements of ``G`` between subgroups of ``S``."""
    H = as_subgroup(G)
    if not S <= H or not S.is_p_group(p) or S.order != p_part(H.order, p):
        raise FusionError("S is not a Sylow p-subgroup of G")
    return _conjugation_system(H, S, p, "group-induced")


def _conjugation_system(H: Subgroup, S: Subgroup, p: int, provenance: str) -> FusionSystem:
    Gp = S.parent
    inv = Gp._inv
    mul = Gp.mul
    ss = S.memberset
    homs: dict[Subgroup, set[Morphism]] = {P: set() for P in S.all_subgroups}
    for g in H.members:
        gi = inv[g]
        conj = {x: mul(mul(gi, x), g) for x in S.members}
        for P in homs:
            images = tuple(conj[x] for x in P.members)
            if all(y in ss for y in images):
                homs[P].add(Morphism(P, Gp.intern(images), images))
    return FusionSystem(p, S, homs, provenance)


def inner_system(T: Subgroup, p: int) -> FusionSystem:
    """``F_T(T)``."""
    return _conjugation_system(T, T, p, "inner")


def generated_subsystem(T: Subgroup, generators: Iterable[Morphism], prime: int,
                        provenance: str = "generated") -> FusionSystem:
    """``<H>_T``: the smallest fusion system on ``T`` containing ``generators``.

    Works level by level from the top: the isomorphisms between subgroups of a
    given order form a groupoid generated by the seeds at that order plus the
    restrictions of everything above; each connected component is described
    by one vertex group and a transversal.
    """
    if not T.is_p_group(prime):
        raise FusionError("carrier must be a p-group")
    seeds: dict[int, set[Morphism]] = defaultdict(set)
    for phi in generators:
        if not phi.domain <= T or not phi.images_in(T):
            raise FusionError("generator is not a map between subgroups of T")
        seeds[phi.domain.order].add(phi.as_iso())
    for t in T.generators:
        seeds[T.order].add(conjugation_morphism(t, T, T))

    by_order: dict[int, list[Subgroup]] = defaultdict(list)
    for P in T.all_subgroups:
        by_order[P.order].append(P)

    homs: dict[Subgroup, set[Morphism]] = {}
    for n in sorted(by_order, reverse=True):
        level = by_order[n]
        homs.update(_groupoid_closure(level, seeds[n]))
        for P in level:
            for M in P.maximal_subgroups:
                for f in homs[P]:
                    seeds[M.order].add(f.restrict(M))
    return FusionSystem(prime, T, homs, provenance)


def _groupoid_closure(objects: list[Subgroup], edges: Iterable[Morphism]) -> dict[Subgroup, set[Morphism]]:
    adj: dict[Subgroup, list[tuple[Subgroup, Morphism]]] = defaultdict(list)
    edges = list(edges)
    for e in edges:
        adj[e.domain].append((e.codomain, e))
        if e.domain is not e.codomain:
            adj[e.codomain].append((e.domain, e.inverse()))
    out: dict[Subgroup, set[Morphism]] = {}
    for base in objects:
        if base in out:
            continue
        tau = {base: identity_morphism(base)}
        order = [base]
        queue = deque([base])
        while queue:
            X = queue.popleft()
            for Y, e in adj[X]:
                if Y not in tau:
                    tau[Y] = tau[X].then(e)
                    order.append(Y)
                    queue.append(Y)
        tau_inv = {X: f.inverse() for X, f in tau.items()}
        loops = set()
        for X in order:
            for Y, e in adj[X]:
                loop = tau[X].then(e).then(tau_inv[Y])
                if not loop.is_identity():
                    loops.add(loop)
        vertex = AutomorphismGroup.generated_by(base, loops).elements
        for X in order:
            out[X] = {tau_inv[X].then(a).then(tau[Y]) for a in vertex for Y in order}
    return out


# ---------------------------------------------------------------------------
# accessors and predicates

def hom_set(F: FusionSystem, P: Subgroup, Q: Subgroup) -> set[Morphism] | AutomorphismGroup:
    """``Hom_F(P, Q)``; for ``P == Q`` the automorphism group ``Aut_F(P)``."""
    F._check_sub(P)
    F._check_sub(Q)
    if P is Q:
        return F.aut(P)
    return {f.with_codomain(Q) for f in F.homs[P] if f.images_in(Q)}


def conjugacy_class(F: FusionSystem, P: Subgroup) -> frozenset[Subgroup]:
    return F.conjugacy_class(P)


def is_fully_normalized(F: FusionSystem, P: Subgroup) -> bool:
    S = F.carrier
    n = normalizer(S, P).order
    return all(normalizer(S, Q).order <= n for Q in F.conjugacy_class(P))


def is_fully_centralized(F: FusionSystem, P: Subgroup) -> bool:
    S = F.carrier
    n = centralizer(S, P).order
    return all(centralizer(S, Q).order <= n for Q in F.conjugacy_class(P))


def is_fully_automized(F: FusionSystem, P: Subgroup) -> bool:
    return F.aut(P).has_sylow(F.aut_carrier(P), F.prime)


def is_centric(F: FusionSystem, P: Subgroup) -> bool:
    key = ("centric", P)
    if key not in F._cache:
        S = F.carrier
        F._cache[key] = all(centralizer(S, Q) <= Q for Q in F.conjugacy_class(P))
    return F._cache[key]


def is_radical(F: FusionSystem, P: Subgroup) -> bool:
    return F.aut(P).op_core(F.prime) == AutomorphismGroup.inner(P)


def compute_N_phi(F: FusionSystem, phi: Morphism) -> Subgroup:
    """``N_phi = {g in N_S(P) : (c_g|_P) phi* in Aut_S(P phi)}``."""
    phi = phi.as_iso()
    if not F.contains(phi):
        raise FusionError("phi is not a morphism of the fusion system")
    P, Q = phi.domain, phi.codomain
    S = F.carrier
    autSQ = F.aut_carrier(Q).elements
    phi_inv = phi.inverse()
    G = S.parent
    keep = [g for g in normalizer(S, P).members
            if phi_inv.then(conjugation_morphism(g, P, P)).then(phi) in autSQ]
    return G.intern(keep)


def extensions(F: FusionSystem, phi: Morphism, X: Subgroup) -> list[Morphism]:
    """Members of ``Hom_F(X, S)`` restricting to ``phi`` on its domain."""
    P = phi.domain
    want = phi.images
    pos = X.pos
    idx = [pos[x] for x in P.members]
    return [f for f in F.homs[X] if tuple(f.images[i] for i in idx) == want]


def is_receptive(F: FusionSystem, Q: Subgroup) -> Check:
    """Every ``phi in Iso_F(P, Q)`` extends to a member of ``Hom_F(N_phi, S)``."""
    for P in sorted(F.conjugacy_class(Q)):
        for phi in sorted(F.isos(P, Q), key=lambda f: f.images):
            N = compute_N_phi(F, phi)
            if not extensions(F, phi, N):
                return Check(False, (P, phi), f"no extension to N_phi of order {N.order}")
    return Check(True)


@dataclass
class SubgroupClassification:
    fully_normalized: bool
    fully_centralized: bool
    fully_automized: bool
    receptive: bool
    centric: bool
    radical: bool


def classify_subgroup(F: FusionSystem, P: Subgroup) -> SubgroupClassification:
    F._check_sub(P)
    return SubgroupClassification(
        fully_normalized=is_fully_normalized(F, P),
        fully_centralized=is_fully_centralized(F, P),
        fully_automized=is_fully_automized(F, P),
        receptive=bool(is_receptive(F, P)),
        centric=is_centric(F, P),
        radical=is_radical(F, P),
    )


@dataclass
class SaturationReport:
    saturated: bool
    failing_classes: list[list[Subgroup]] = field(default_factory=list)
    witnesses: list[Any] = field(default_factory=list)

    def __bool__(self):
        return self.saturated


def is_saturated(F: FusionSystem) -> SaturationReport:
    """Each F-class must contain a subgroup that is fully automized and receptive."""
    if "saturation" in F._cache:
        return F._cache["saturation"]
    S = F.carrier
    report = SaturationReport(True)
    for cl in F.classes():
        # fully normalized members are the natural candidates; try them first
        cand = sorted(cl, key=lambda Q: (-normalizer(S, Q).order, Q.sort_key))
        last = None
        for Q in cand:
            if not is_fully_automized(F, Q):
                last = (Q, "not fully automized")
                continue
            rec = is_receptive(F, Q)
            if rec:
                break
            last = (Q, rec.witness)
        else:
            report.saturated = False
            report.failing_classes.append(cl)
            report.witnesses.append(last)
    F._cache["saturation"] = report
    return report


def is_strongly_closed(F: FusionSystem, R: Subgroup) -> bool:
    F._check_sub(R)
    rs = R.memberset
    for P in R.all_subgroups:
        for f in F.homs[P]:
            if not f.codomain.memberset <= rs:
                return False
    return True


def is_subsystem(E: FusionSystem, F: FusionSystem) -> Check:
    if E.prime != F.prime or not E.carrier <= F.carrier:
        return Check(False, None, "carrier not contained")
    for P in E.subgroups:
        extra = E.homs[P] - F.homs[P]
        if extra:
            return Check(False, (P, min(extra, key=lambda f: f.images)), "morphism not in F")
    return Check(True)


def is_normal_subsystem(F: FusionSystem, F0: FusionSystem) -> Check:
    """Conditions (N0)-(N4) in order; the first failure is returned as ``detail``."""
    S, S0 = F.carrier, F0.carrier
    if F0.prime != F.prime or not S0 <= S:
        return Check(False, None, "N0: carrier not contained")
    sub = is_subsystem(F0, F)
    if not sub:
        return Check(False, sub.witness, "N0: not a subsystem")
    if not is_strongly_closed(F, S0):
        return Check(False, S0, "N1: carrier not strongly closed")
    sat = is_saturated(F0)
    if not sat:
        return Check(False, sat.witnesses, "N2: not saturated")
    w = _strong_invariance_failure(F, F0)
    if w is not None:
        return Check(False, w, "N3: not strongly F-invariant")
    w = _extension_failure(F, F0)
    if w is not None:
        return Check(False, w, "N4: extension condition fails")
    return Check(True)


def _strong_invariance_failure(F: FusionSystem, F0: FusionSystem):
    S0 = F0.carrier
    s0 = S0.memberset
    for Q in F0.subgroups:
        psis = [f for f in F.homs[Q] if f.codomain.memberset <= s0]
        for P in Q.all_subgroups:
            phis = [f for f in F0.homs[P] if f.codomain <= Q]
            for psi in psis:
                psi_P = psi.restrict(P)
                back = psi_P.inverse()
                for phi in phis:
                    conj = back.then(phi).then(psi.restrict(phi.codomain))
                    if conj not in F0.homs[conj.domain]:
                        return (P, Q, phi, psi)
    return None


def _extension_failure(F: FusionSystem, F0: FusionSystem):
    S, S0 = F.carrier, F0.carrier
    G = S.parent
    C = centralizer(S, S0)
    X = G.generate(S0.generators + C.generators)
    Z0 = center(S0).memberset
    for alpha in F0.aut(S0).elements:
        ok = False
        for ext in extensions(F, alpha, X):
            if ext.codomain is X and all(G.mul(G.inv(c), ext(c)) in Z0 for c in C.members):
                ok = True
                break
        if not ok:
            return alpha
    return None


def systems_equal(F1: FusionSystem, F2: FusionSystem) -> Check:
    """Exact equality of Hom tables; the witness is ``(P, Q, phi)`` present in one system only."""
    if F1.prime != F2.prime:
        return Check(False, None, "different primes")
    if F1.carrier is not F2.carrier:
        return Check(False, (F1.carrier, F2.carrier), "different carriers")
    for P in F1.subgroups:
        a, b = F1.homs[P], F2.homs[P]
        if a != b:
            f = min(a ^ b, key=lambda m: (m.codomain.sort_key, m.images))
            where = "first" if f in a else "second"
            return Check(False, (P, f.codomain, f), f"morphism only in the {where} system")
    return Check(True)


def verify_axioms(F: FusionSystem) -> Check:
    """Exhaustive check of the fusion-system axioms on the stored isomorphisms."""
    S = F.carrier
    for P in F.subgroups:
        hs = F.homs[P]
        for f in hs:
            if f.domain is not P or f.image is not f.codomain:
                return Check(False, f, "stored map is not an isomorphism onto its image")
            if not f.is_homomorphism():
                return Check(False, f, "not a homomorphism")
            if f.inverse() not in F.homs[f.codomain]:
                return Check(False, f, "inverse missing")
            for M in P.maximal_subgroups:
                if f.restrict(M) not in F.homs[M]:
                    return Check(False, (f, M), "restriction missing")
            for g in F.homs[f.codomain]:
                if f.then(g) not in hs:
                    return Check(False, (f, g), "composite missing")
        for s in S.members:
            if P.conjugate(s) <= S and conjugation_morphism(s, P) not in hs:
                return Check(False, (P, s), "conjugation by the carrier missing")
    return Check(True)


def op_of_aut(F: FusionSystem, P: Subgroup) -> AutomorphismGroup:
    """``O^p(Aut_F(P))`` (cached)."""
    key = ("Op", P)
    if key not in F._cache:
        F._cache[key] = F.aut(P).op_residual(F.prime)
    return F._cache[key]


# ---------------------------------------------------------------------------
# quotients

class QuotientSystem:
    """``F/R`` for a strongly closed subgroup ``R`` of the carrier."""

    def __init__(self, base: FusionSystem, kernel: Subgroup):
        if not is_strongly_closed(base, kernel):
            raise FusionError("kernel is not strongly closed")
        self.base = base
        self.kernel = kernel
        S = base.carrier
        G = S.parent
        rep = {}
        for x in S.members:
            if x not in rep:
                coset = [G.mul(x, r) for r in kernel.members]
                m = min(coset)
                for y in coset:
                    rep[y] = m
        reps = sorted(set(rep.values()))
        self._rep_pos = {r: i for i, r in enumerate(reps)}
        lab = G.labels
        self.quotient_group = FiniteGroup(
            reps, lambda a, b: rep[G.mul(a, b)],
            labels=[lab[r] + "R" if r else "R" for r in reps], name=f"{G.name}/R")
        # projection S -> S/R on element indices
        self.projection = {x: self._rep_pos[rep[x]] for x in S.members}
        Q = self.quotient_group
        homs: dict[Subgroup, set[Morphism]] = defaultdict(set)
        for P in base.subgroups:
            if kernel <= P:
                for f in base.homs[P]:
                    g = self.induced(f)
                    homs[g.domain].add(g)
        self.system = FusionSystem(base.prime, Q.whole, homs, "quotient")

    def project(self, P: Subgroup) -> Subgroup:
        return self.quotient_group.intern(self.projection[x] for x in P.members)

    def induced(self, f: Morphism) -> Morphism:
        """The map ``PR/R -> QR/R`` induced by ``f``."""
        pr = self.projection
        img = {}
        for x in f.domain.members:
            img.setdefault(pr[x], pr[f(x)])
        Q = self.quotient_group
        dom = Q.intern(img)
        images = tuple(img[y] for y in dom.members)
        return Morphism(dom, Q.intern(images), images)

    def image(self, E: FusionSystem) -> FusionSystem:
        """``E/R``: generated on ``ER/R`` by the maps induced from ``E``."""
        gens = {self.induced(f) for P in E.subgroups for f in E.homs[P]}
        return generated_subsystem(self.project(E.carrier), gens, self.base.prime, "quotient-image")


def quotient_system(F: FusionSystem, R: Subgroup) -> QuotientSystem:
    return QuotientSystem(F, R)


def sylow(G: FiniteGroup | Subgroup, p: int) -> Subgroup:
    return sylow_subgroup(as_subgroup(G), p)


__all__ = [
    "Check", "FusionError", "FusionSystem", "QuotientSystem", "SaturationReport",
    "SubgroupClassification", "classify_subgroup", "compute_N_phi", "conjugacy_class",
    "extensions", "fusion_system_of_group", "generated_subsystem", "hom_set", "inner_system",
    "is_centric", "is_fully_automized", "is_fully_centralized", "is_fully_normalized",
    "is_normal_subsystem", "is_radical", "is_receptive", "is_saturated", "is_strongly_closed",
    "is_subsystem", "op_of_aut", "quotient_system", "sylow", "systems_equal", "verify_axioms",
]
