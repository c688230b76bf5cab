"""Exact finite-group arithmetic over canonically indexed elements.

A :class:`FiniteGroup` stores its elements in a canonical order (identity at
index 0) together with a Cayley table, so every product is a list lookup.
Subgroups are interned per parent group, which makes ``is`` comparisons and
dictionary keys on subgroups cheap and reliable.

Maps act on the right, so ``mul(a, b)`` means "first ``a``, then ``b``" for
permutations and for morphisms alike; conjugation is ``x^g = g^-1 x g``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

DEFAULT_ORDER_CAP = 10000
CAYLEY_TABLE_LIMIT = 4096


class GroupError(Exception):
    """Base class for errors raised by group computations."""


class SizeLimitError(GroupError):
    pass


class DomainError(GroupError):
    pass


def order_cap() -> int:
    return int(os.environ.get("FF_MAX_GROUP_ORDER", DEFAULT_ORDER_CAP))


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


# ---------------------------------------------------------------------------
# permutations (0-based image tuples)

def perm_mul(a: tuple, b: tuple) -> tuple:
    """Apply ``a`` first, then ``b``."""
    return tuple(b[x] for x in a)


def perm_inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def cycles_to_perm(degree: int, cycles: Sequence[Sequence[int]]) -> tuple:
    """Build an image tuple from 1-based disjoint cycles."""
    img = list(range(degree))
    seen = set()
    for cyc in cycles:
        for pt in cyc:
            if not 1 <= pt <= degree:
                raise ValueError(f"point {pt} outside 1..{degree}")
            if pt in seen:
                raise ValueError(f"point {pt} occurs twice in cycle notation")
            seen.add(pt)
        for i, pt in enumerate(cyc):
            img[pt - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(img)


def perm_to_cycles(a: tuple) -> str:
    seen = set()
    out = []
    for i in range(len(a)):
        if i in seen or a[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = a[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = a[j]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def _closure(gens: Iterable, mul: Callable, identity: Hashable, cap: int) -> list:
    gens = list(dict.fromkeys(gens))
    seen = {identity}
    out = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > cap:
                    raise SizeLimitError(f"closure exceeds order cap {cap}")
                queue.append(y)
    return out


# ---------------------------------------------------------------------------
# groups and subgroups

class FiniteGroup:
    """A finite group on canonically ordered hashable elements.

    ``elements`` must be sorted canonically with the identity first; ``mul``
    is the group law on the raw elements.
    """

    def __init__(self, elements: Sequence, mul: Callable, inv: Callable | None = None,
                 labels: Sequence[str] | None = None, name: str = "G"):
        self.elements = list(elements)
        self.order = len(self.elements)
        self.name = name
        self._mul_raw = mul
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.order)]
        self._table = None
        if self.order <= CAYLEY_TABLE_LIMIT:
            idx = self._index
            self._table = [[idx[mul(a, b)] for b in self.elements] for a in self.elements]
        if inv is not None:
            self._inv = [self._index[inv(e)] for e in self.elements]
        elif self._table is not None:
            self._inv = [row.index(0) for row in self._table]
        else:
            self._inv = [next(j for j in range(self.order) if self.mul(i, j) == 0)
                         for i in range(self.order)]
        if self.mul(0, 0) != 0:
            raise GroupError("element 0 is not the identity")
        self._subgroups: dict[frozenset, Subgroup] = {}

    def __repr__(self):
        return f"<FiniteGroup {self.name} of order {self.order}>"

    def __len__(self):
        return self.order

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        return self._index[self._mul_raw(self.elements[a], self.elements[b])]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def index(self, element) -> int:
        return self._index[element]

    def conj(self, x: int, g: int) -> int:
        """``x^g = g^-1 x g``."""
        return self.mul(self.mul(self._inv[g], x), g)

    def comm(self, x: int, y: int) -> int:
        """``[x, y] = x^-1 y^-1 x y``."""
        return self.mul(self.mul(self._inv[x], self._inv[y]), self.mul(x, y))

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self._inv[x], -k
        r = 0
        while k:
            if k & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            k >>= 1
        return r

    def element_order(self, x: int) -> int:
        n, y = 1, x
        while y != 0:
            y = self.mul(y, x)
            n += 1
        return n

    # subgroups ------------------------------------------------------------

    def intern(self, members: Iterable[int]) -> Subgroup:
        """Return the unique :class:`Subgroup` object with these members.

        No closure check is done; use :meth:`generate` for arbitrary seeds.
        """
        key = frozenset(members)
        sub = self._subgroups.get(key)
        if sub is None:
            sub = Subgroup(self, key)
            self._subgroups[key] = sub
        return sub

    def generate(self, seed: Iterable[int]) -> Subgroup:
        seed = [x for x in dict.fromkeys(seed) if x != 0]
        if not seed:
            return self.trivial
        members = _closure(seed, self.mul, 0, self.order)
        return self.intern(members)

    @cached_property
    def whole(self) -> Subgroup:
        return self.intern(range(self.order))

    @cached_property
    def trivial(self) -> Subgroup:
        return self.intern([0])

    def check_axioms(self) -> None:
        """Exhaustive associativity/identity/inverse check."""
        r = range(self.order)
        for a in r:
            if self.mul(0, a) != a or self.mul(a, 0) != a:
                raise GroupError(f"identity fails at {a}")
            if self.mul(a, self._inv[a]) != 0:
                raise GroupError(f"inverse fails at {a}")
            for b in r:
                ab = self.mul(a, b)
                for c in r:
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)):
                        raise GroupError(f"associativity fails at {(a, b, c)}")


class Subgroup:
    """A subgroup of a :class:`FiniteGroup`, interned by its member set."""

    __slots__ = ("parent", "memberset", "members", "order", "_hash", "__dict__")

    def __init__(self, parent: FiniteGroup, memberset: frozenset):
        self.parent = parent
        self.memberset = memberset
        self.members = tuple(sorted(memberset))
        self.order = len(self.members)
        self._hash = hash(self.members)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (isinstance(other, Subgroup) and self.parent is other.parent
                                 and self.memberset == other.memberset)

    def __lt__(self, other: Subgroup) -> bool:
        # canonical order: by size, then lexicographically by member list
        return self.sort_key < other.sort_key

    def __le__(self, other: Subgroup) -> bool:
        return self.memberset <= other.memberset

    def __contains__(self, x: int) -> bool:
        return x in self.memberset

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return self.order

    def __repr__(self):
        lab = self.parent.labels
        if self.order <= 4:
            body = ", ".join(lab[x] for x in self.members)
        else:
            body = ", ".join(lab[x] for x in self.generators)
            return f"<{self.order}: gens {body}>"
        return f"<{self.order}: {body}>"

    def issubgroup(self, other: Subgroup) -> bool:
        return self.memberset <= other.memberset

    @property
    def sort_key(self):
        return (self.order, self.members)

    @cached_property
    def pos(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.members)}

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: scan members in order, keep non-redundant ones."""
        gens: list[int] = []
        cur = self.parent.trivial
        for x in self.members:
            if x not in cur:
                gens.append(x)
                cur = self.parent.generate(gens)
                if cur.order == self.order:
                    break
        return tuple(gens)

    @cached_property
    def all_subgroups(self) -> list[Subgroup]:
        """Every subgroup, in canonical order."""
        G = self.parent
        cyclic = {G.generate([x]) for x in self.members}
        found = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            nxt = []
            for A in frontier:
                for C in cyclic:
                    if C <= A:
                        continue
                    J = G.generate(A.generators + C.generators)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
            frontier = nxt
        return sorted(found)

    @cached_property
    def maximal_subgroups(self) -> list[Subgroup]:
        subs = [H for H in self.all_subgroups if H.order < self.order]
        return [H for H in subs
                if not any(H.order < K.order and H <= K for K in subs)]

    def is_normal_in(self, H: Subgroup) -> bool:
        G = self.parent
        return all(G.conj(x, h) in self.memberset for h in H.generators for x in self.members)

    def conjugate(self, g: int) -> Subgroup:
        G = self.parent
        return G.intern(G.conj(x, g) for x in self.members)

    def intersection(self, other: Subgroup) -> Subgroup:
        return self.parent.intern(self.memberset & other.memberset)

    def join(self, other: Subgroup) -> Subgroup:
        return self.parent.generate(self.generators + other.generators)

    def is_p_group(self, p: int) -> bool:
        return is_p_power(self.order, p)


def as_subgroup(G: FiniteGroup | Subgroup) -> Subgroup:
    return G.whole if isinstance(G, FiniteGroup) else G


def from_generators(gens: Sequence, mul: Callable, identity, inv: Callable | None = None,
                    key: Callable | None = None, label: Callable | None = None,
                    name: str = "G", cap: int | None = None) -> FiniteGroup:
    cap = order_cap() if cap is None else cap
    elems = _closure(gens, mul, identity, cap)
    elems.sort(key=key)
    if elems[0] != identity:
        raise GroupError("canonical ordering must put the identity first")
    labels = [label(e) for e in elems] if label else None
    return FiniteGroup(elems, mul, inv=inv, labels=labels, name=name)


# ---------------------------------------------------------------------------
# constructions

def build_group_from_permutations(degree: int, generators: Sequence[Sequence[int]],
                                  name: str = "G", cap: int | None = None) -> FiniteGroup:
    """Close 0-based permutation image tuples under composition.

    Elements are ordered lexicographically by image tuple, so the identity
    lands at index 0.
    """
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"{g} is not a permutation of degree {degree}")
        gens.append(g)
    identity = tuple(range(degree))
    return from_generators(gens, perm_mul, identity, inv=perm_inv, label=perm_to_cycles,
                           name=name, cap=cap)


def perm_group_from_cycles(degree: int, gens: Sequence[str], name: str = "G") -> FiniteGroup:
    """Convenience wrapper: ``perm_group_from_cycles(4, ["(1 2 3 4)", "(1 3)"])``."""
    return build_group_from_permutations(degree, [parse_cycles(degree, s) for s in gens], name=name)


def parse_cycles(degree: int, text: str) -> tuple:
    text = text.strip()
    cycles = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ValueError(f"bad cycle notation: {text!r}")
        j = text.find(")", i)
        if j < 0:
            raise ValueError(f"unclosed cycle in {text!r}")
        body = text[i + 1:j].replace(",", " ").split()
        cycles.append([int(t) for t in body])
        i = j + 1
    return cycles_to_perm(degree, cycles)


def perm_element(G: FiniteGroup, cycles: str) -> int:
    degree = len(G.elements[0])
    return G.index(parse_cycles(degree, cycles))


def generate_subgroup(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    return G.generate(seed)


# ---------------------------------------------------------------------------
# local subgroups, Sylow theory

@dataclass(frozen=True)
class LocalData:
    normalizer: Subgroup
    centralizer: Subgroup
    center: Subgroup


def normalizer(H: Subgroup, P: Subgroup) -> Subgroup:
    """``N_H(P)``."""
    G = H.parent
    ps = P.memberset
    return G.intern(h for h in H.members if all(G.conj(x, h) in ps for x in P.generators))


def centralizer(H: Subgroup, P: Subgroup) -> Subgroup:
    """``C_H(P)``."""
    G = H.parent
    return G.intern(h for h in H.members if all(G.mul(x, h) == G.mul(h, x) for x in P.generators))


def center(P: Subgroup) -> Subgroup:
    return centralizer(P, P)


def local_subgroup_data(G: FiniteGroup | Subgroup, P: Subgroup) -> LocalData:
    H = as_subgroup(G)
    return LocalData(normalizer(H, P), centralizer(H, P), center(P))


def p_elements(H: Subgroup, p: int) -> list[int]:
    G = H.parent
    return [x for x in H.members if is_p_power(G.element_order(x), p)]


def sylow_subgroup(H: Subgroup, p: int) -> Subgroup:
    """The canonically first Sylow ``p``-subgroup of ``H``."""
    G = H.parent
    target = p_part(H.order, p)
    P = G.trivial
    pel = p_elements(H, p)
    while P.order < target:
        N = normalizer(H, P).memberset
        # a p-element normalizing P but outside it enlarges P to a p-group
        g = next(x for x in pel if x in N and x not in P)
        P = G.generate(P.generators + (g,))
    return min({P.conjugate(h) for h in H.members})


def op_residual(H: Subgroup, p: int) -> Subgroup:
    """``O^p(H)``: generated by the elements of order prime to ``p``."""
    G = H.parent
    return G.generate(x for x in H.members if G.element_order(x) % p != 0)


def op_core(H: Subgroup, p: int) -> Subgroup:
    """``O_p(H)``: intersection of all Sylow ``p``-subgroups."""
    S = sylow_subgroup(H, p)
    core = S.memberset
    for h in H.members:
        core = core & S.conjugate(h).memberset
    return H.parent.intern(core)


@dataclass(frozen=True)
class SylowData:
    sylow: Subgroup
    p_residual: Subgroup
    p_core: Subgroup


def sylow_and_cores(G: FiniteGroup | Subgroup, p: int) -> SylowData:
    H = as_subgroup(G)
    return SylowData(sylow_subgroup(H, p), op_residual(H, p), op_core(H, p))


def overgroups(H: Subgroup, K: Subgroup) -> list[Subgroup]:
    """All subgroups ``M`` with ``K <= M <= H``."""
    G = H.parent
    found = {K}
    frontier = [K]
    while frontier:
        nxt = []
        for M in frontier:
            for g in H.members:
                if g in M:
                    continue
                J = G.generate(M.generators + (g,))
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found)


# ---------------------------------------------------------------------------
# morphisms

class Morphism:
    """An injective homomorphism stored as the image list over ``domain.members``."""

    __slots__ = ("domain", "codomain", "images", "_hash")

    def __init__(self, domain: Subgroup, codomain: Subgroup, images: tuple):
        self.domain = domain
        self.codomain = codomain
        self.images = images
        self._hash = hash((domain._hash, images))

    @classmethod
    def from_map(cls, domain: Subgroup, f: Callable[[int], int], codomain: Subgroup | None = None):
        images = tuple(f(x) for x in domain.members)
        if codomain is None:
            codomain = domain.parent.intern(images)
        return cls(domain, codomain, images)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (isinstance(other, Morphism) and self.images == other.images
                and self.domain is other.domain and self.codomain is other.codomain)

    def __repr__(self):
        lab = self.domain.parent.labels
        pairs = ", ".join(f"{lab[x]}->{lab[self(x)]}" for x in self.domain.generators)
        return f"Morphism[{pairs}]"

    def __call__(self, x: int) -> int:
        return self.images[self.domain.pos[x]]

    @property
    def image(self) -> Subgroup:
        return self.domain.parent.intern(self.images)

    def as_iso(self) -> Morphism:
        """The same map with codomain cut down to its image."""
        img = self.domain.parent.intern(self.images)
        return self if img is self.codomain else Morphism(self.domain, img, self.images)

    def with_codomain(self, Q: Subgroup) -> Morphism:
        if not self.images_in(Q):
            raise DomainError("image not contained in requested codomain")
        return Morphism(self.domain, Q, self.images)

    def images_in(self, Q: Subgroup) -> bool:
        qs = Q.memberset
        return all(y in qs for y in self.images)

    def then(self, other: Morphism) -> Morphism:
        """Composite ``self`` followed by ``other``."""
        pos = other.domain.pos
        oi = other.images
        try:
            images = tuple(oi[pos[y]] for y in self.images)
        except KeyError:
            raise DomainError("composition undefined: image not in next domain") from None
        return Morphism(self.domain, other.codomain, images)

    def restrict(self, R: Subgroup, codomain: Subgroup | None = None) -> Morphism:
        pos = self.domain.pos
        im = self.images
        try:
            images = tuple(im[pos[x]] for x in R.members)
        except KeyError:
            raise DomainError("restriction to a non-subgroup of the domain") from None
        if codomain is None:
            codomain = R.parent.intern(images)
        return Morphism(R, codomain, images)

    def inverse(self) -> Morphism:
        img = self.domain.parent.intern(self.images)
        if img is not self.codomain:
            raise DomainError("only isomorphisms onto the codomain are invertible")
        back = dict(zip(self.images, self.domain.members))
        return Morphism(img, self.domain, tuple(back[y] for y in img.members))

    def is_homomorphism(self) -> bool:
        G = self.domain.parent
        d = self.domain.members
        return all(self(G.mul(x, y)) == G.mul(self(x), self(y)) for x in d for y in d)

    def is_identity(self) -> bool:
        return self.images == self.domain.members

    def order(self) -> int:
        """Order as an automorphism (domain == codomain)."""
        n, f = 1, self
        while not f.is_identity():
            f = f.then(self)
            n += 1
        return n

    def commutator_subgroup(self, R: Subgroup | None = None) -> Subgroup:
        """``[R, self]`` generated by ``x^-1 (x self)``; ``R`` defaults to the domain."""
        G = self.domain.parent
        R = self.domain if R is None else R
        return G.generate(G.mul(G.inv(x), self(x)) for x in R.members)

    def fixed_points(self) -> Subgroup:
        return self.domain.parent.intern(x for x in self.domain.members if self(x) == x)


def identity_morphism(P: Subgroup, codomain: Subgroup | None = None) -> Morphism:
    return Morphism(P, P if codomain is None else codomain, P.members)


def inclusion(P: Subgroup, Q: Subgroup) -> Morphism:
    if not P <= Q:
        raise DomainError("P is not contained in Q")
    return Morphism(P, Q, P.members)


def conjugation_morphism(g: int, P: Subgroup, Q: Subgroup | None = None) -> Morphism:
    """``c_g|_P : P -> Q``, ``x -> g^-1 x g``."""
    G = P.parent
    gi = G.inv(g)
    images = tuple(G.mul(G.mul(gi, x), g) for x in P.members)
    img = G.intern(images)
    if Q is None:
        Q = img
    elif not img <= Q:
        raise DomainError("P^g is not contained in Q")
    return Morphism(P, Q, images)


def morphism_from_generators(P: Subgroup, gen_images: dict[int, int], Q: Subgroup) -> Morphism:
    """Extend generator images to all of ``P`` by walking words; validates the result."""
    G = P.parent
    img = {0: 0}
    queue = deque([0])
    gens = list(gen_images)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.mul(x, g)
            if y not in img:
                img[y] = G.mul(img[x], gen_images[g])
                queue.append(y)
    if set(img) != P.memberset:
        raise DomainError("generator images do not cover the domain")
    f = Morphism(P, Q, tuple(img[x] for x in P.members))
    if not f.is_homomorphism() or len(set(f.images)) != P.order or not f.images_in(Q):
        raise DomainError("generator images do not define an injective homomorphism")
    return f


# ---------------------------------------------------------------------------
# automorphism groups

class AutomorphismGroup:
    """A set of automorphisms of ``base`` forming a group under composition."""

    def __init__(self, base: Subgroup, elements: Iterable[Morphism], check: bool = False):
        self.base = base
        self.elements = frozenset(elements)
        if check:
            self._check()

    @classmethod
    def generated_by(cls, base: Subgroup, gens: Iterable[Morphism]) -> AutomorphismGroup:
        ident = identity_morphism(base)
        elems = _closure(list(gens), Morphism.then, ident, 10 ** 7)
        return cls(base, elems)

    @classmethod
    def inner(cls, P: Subgroup) -> AutomorphismGroup:
        return cls(P, {conjugation_morphism(x, P, P) for x in P.members})

    @classmethod
    def induced(cls, H: Subgroup, P: Subgroup) -> AutomorphismGroup:
        """``Aut_H(P)`` = conjugations by ``N_H(P)``."""
        return cls(P, {conjugation_morphism(g, P, P) for g in normalizer(H, P).members})

    def _check(self):
        ident = identity_morphism(self.base)
        if ident not in self.elements:
            raise GroupError("automorphism set lacks identity")
        for a in self.elements:
            if a.domain is not self.base or a.codomain is not self.base:
                raise GroupError("element is not an automorphism of the base")
            if a.inverse() not in self.elements:
                raise GroupError("not closed under inversion")
            for b in self.elements:
                if a.then(b) not in self.elements:
                    raise GroupError("not closed under composition")

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: Morphism) -> bool:
        return a in self.elements

    def __iter__(self):
        return iter(sorted(self.elements, key=lambda a: a.images))

    def __le__(self, other: AutomorphismGroup) -> bool:
        return self.elements <= other.elements

    def __eq__(self, other):
        return (isinstance(other, AutomorphismGroup) and self.base is other.base
                and self.elements == other.elements)

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"<AutomorphismGroup of order {self.order} on {self.base!r}>"

    @cached_property
    def group(self) -> FiniteGroup:
        """The abstract group structure, elements sorted by image tuple."""
        elems = sorted(self.elements, key=lambda a: a.images)
        return FiniteGroup(elems, Morphism.then, inv=Morphism.inverse, name="Aut")

    def _wrap(self, sub: Subgroup) -> AutomorphismGroup:
        els = self.group.elements
        return AutomorphismGroup(self.base, (els[i] for i in sub.members))

    def op_residual(self, p: int) -> AutomorphismGroup:
        """``O^p``: generated by elements of order prime to ``p``."""
        gens = [a for a in self.elements if a.order() % p != 0]
        return AutomorphismGroup.generated_by(self.base, gens)

    def op_core(self, p: int) -> AutomorphismGroup:
        return self._wrap(op_core(self.group.whole, p))

    def sylow(self, p: int) -> AutomorphismGroup:
        return self._wrap(sylow_subgroup(self.group.whole, p))

    def has_sylow(self, sub: AutomorphismGroup, p: int) -> bool:
        """Is ``sub`` (a p-subgroup of self) a Sylow p-subgroup of self?"""
        return sub <= self and sub.order == p_part(self.order, p) and is_p_power(sub.order, p)

    def is_p_group(self, p: int) -> bool:
        return is_p_power(self.order, p)

    def stabilizer(self, R: Subgroup) -> AutomorphismGroup:
        """``N_A(R)``: elements mapping the subgroup ``R`` of the base onto itself."""
        rs = R.memberset
        return AutomorphismGroup(self.base, (a for a in self.elements
                                             if all(a(x) in rs for x in R.members)))

    def centralizer_of(self, R: Subgroup) -> AutomorphismGroup:
        """``C_A(R)``: elements fixing ``R`` pointwise."""
        return AutomorphismGroup(self.base, (a for a in self.elements
                                             if all(a(x) == x for x in R.members)))

    def restricted_to(self, R: Subgroup) -> AutomorphismGroup:
        """Restrictions to ``R`` of the elements that normalize ``R``."""
        return AutomorphismGroup(R, {a.restrict(R, R) for a in self.stabilizer(R).elements})

    def product(self, other: AutomorphismGroup) -> AutomorphismGroup:
        """The subgroup generated by both (equals ``AB`` when one normalizes the other)."""
        return AutomorphismGroup.generated_by(self.base, self.elements | other.elements)

    def conjugate_by(self, psi: Morphism) -> AutomorphismGroup:
        """``A psi* = {psi^-1 a psi}`` for ``psi`` an automorphism of the base."""
        psi_inv = psi.inverse()
        return AutomorphismGroup(self.base, {psi_inv.then(a).then(psi) for a in self.elements})


def transport_automorphisms(phi: Morphism, A: AutomorphismGroup) -> AutomorphismGroup:
    """``A phi* = {phi^-1 a phi}`` on the image of the isomorphism ``phi``."""
    if phi.domain is not A.base:
        raise DomainError("phi must be defined on the base of A")
    if phi.image is not phi.codomain:
        raise DomainError("phi must be an isomorphism onto its codomain")
    phi_inv = phi.inverse()
    return AutomorphismGroup(phi.codomain, {phi_inv.then(a).then(phi) for a in A.elements})
