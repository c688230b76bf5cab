"""Small finite fields and linear/affine groups realised as permutation groups.

Vectors over GF(q) are encoded as integers (base-q digits), so a linear or
affine map becomes a permutation of ``range(q**n)`` and every group built
here is an ordinary :class:`~fusionprod.groups.FiniteGroup`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .groups import FiniteGroup, GroupError, Subgroup, build_group_from_permutations, is_prime


class FixtureError(GroupError):
    """Invalid parameters for a linear fixture."""


class GF:
    """The field with ``q = p**k`` elements.

    Elements are the integers ``0..q-1``; the base-``p`` digits of an integer
    are the coefficients of a polynomial modulo a fixed irreducible.
    """

    def __init__(self, q: int):
        p = next((d for d in range(2, q + 1) if q % d == 0), None)
        if p is None or not is_prime(p):
            raise FixtureError(f"{q} is not a prime power")
        k, r = 0, q
        while r % p == 0:
            r //= p
            k += 1
        if r != 1:
            raise FixtureError(f"{q} is not a prime power")
        self.q, self.p, self.k = q, p, k
        self._modulus = self._find_irreducible() if k > 1 else None
        self._add = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]
        self._mul = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
        self._neg = [self._add[a].index(0) for a in range(q)]
        self._inv = [0] + [self._mul[a].index(1) for a in range(1, q)]

    def __repr__(self):
        return f"GF({self.q})"

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def _from_digits(self, d: Sequence[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(d))

    def _add_raw(self, a: int, b: int) -> int:
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _polymul_mod(self, a: list[int], b: list[int], mod: list[int] | None) -> list[int]:
        p = self.p
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        if mod is None:
            return prod
        k = len(mod) - 1  # mod is monic
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                for j in range(k + 1):
                    prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
        return (prod + [0] * k)[:k]

    def _find_irreducible(self) -> list[int]:
        p, k = self.p, self.k
        for tail in itertools.product(range(p), repeat=k):
            mod = list(tail) + [1]
            if mod[0] == 0:
                continue
            # irreducible iff no monic factor of degree <= k/2
            if not any(self._divides(f, mod) for d in range(1, k // 2 + 1)
                       for f in self._monic_polys(d)):
                return mod
        raise FixtureError("no irreducible polynomial found")

    def _monic_polys(self, d: int):
        for tail in itertools.product(range(self.p), repeat=d):
            yield list(tail) + [1]

    def _divides(self, f: list[int], g: list[int]) -> bool:
        p = self.p
        r = list(g)
        df = len(f) - 1
        for i in range(len(r) - 1, df - 1, -1):
            c = r[i]
            if c:
                for j in range(df + 1):
                    r[i - df + j] = (r[i - df + j] - c * f[j]) % p
        return not any(r[:df])

    def _mul_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        return self._from_digits(self._polymul_mod(self._digits(a), self._digits(b), self._modulus))

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def mult_order(self, a: int) -> int:
        n, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def primitive_element(self) -> int:
        return next(a for a in range(1, self.q) if self.mult_order(a) == self.q - 1)


Vector = tuple
Matrix = tuple  # tuple of rows


class VectorSpace:
    """GF(q)^n with integer encoding of vectors; maps act on column vectors."""

    def __init__(self, field: GF, dim: int):
        self.F = field
        self.dim = dim
        self.size = field.q ** dim

    def encode(self, v: Sequence[int]) -> int:
        q = self.F.q
        return sum(c * q ** i for i, c in enumerate(v))

    def decode(self, n: int) -> Vector:
        q = self.F.q
        return tuple((n // q ** i) % q for i in range(self.dim))

    def vectors(self):
        return (self.decode(n) for n in range(self.size))

    def vadd(self, u: Vector, v: Vector) -> Vector:
        return tuple(self.F.add(a, b) for a, b in zip(u, v))

    def scale(self, c: int, v: Vector) -> Vector:
        return tuple(self.F.mul(c, a) for a in v)

    def apply(self, M: Matrix, v: Vector) -> Vector:
        F = self.F
        out = []
        for row in M:
            s = 0
            for a, b in zip(row, v):
                s = F.add(s, F.mul(a, b))
            out.append(s)
        return tuple(out)

    def span(self, vectors: Sequence[Vector]) -> set[Vector]:
        out = {tuple([0] * self.dim)}
        for v in vectors:
            out = {self.vadd(u, self.scale(c, v)) for u in out for c in range(self.F.q)}
        return out

    def matmul(self, A: Matrix, B: Matrix) -> Matrix:
        F = self.F
        n = self.dim
        return tuple(tuple(_dot(F, A[i], [B[k][j] for k in range(n)]) for j in range(n))
                     for i in range(n))

    def inverse(self, M: Matrix) -> Matrix:
        """Gauss-Jordan inverse; raises :class:`FixtureError` if singular."""
        F, n = self.F, self.dim
        A = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
        for col in range(n):
            piv = next((r for r in range(col, n) if A[r][col] != 0), None)
            if piv is None:
                raise FixtureError("matrix is not invertible")
            A[col], A[piv] = A[piv], A[col]
            c = F.inv(A[col][col])
            A[col] = [F.mul(c, x) for x in A[col]]
            for r in range(n):
                if r != col and A[r][col]:
                    f = A[r][col]
                    A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[col])]
        return tuple(tuple(row[n:]) for row in A)

    def from_columns(self, cols: Sequence[Vector]) -> Matrix:
        return tuple(tuple(c[i] for c in cols) for i in range(self.dim))

    def scalar_on(self, scalar: int, on: Sequence[Vector], fixed: Sequence[Vector]) -> Matrix:
        """The map that is ``scalar`` on span(on) and the identity on span(fixed)."""
        if len(on) + len(fixed) != self.dim:
            raise FixtureError("subspaces do not form a direct sum decomposition")
        B = self.from_columns(list(on) + list(fixed))
        Binv = self.inverse(B)
        D = tuple(tuple((scalar if i < len(on) else 1) if i == j else 0 for j in range(self.dim))
                  for i in range(self.dim))
        return self.matmul(self.matmul(B, D), Binv)

    def linear_perm(self, M: Matrix) -> tuple:
        return tuple(self.encode(self.apply(M, self.decode(n))) for n in range(self.size))

    def translation_perm(self, s: Vector) -> tuple:
        return tuple(self.encode(self.vadd(self.decode(n), s)) for n in range(self.size))


def _dot(F: GF, u, v) -> int:
    s = 0
    for a, b in zip(u, v):
        s = F.add(s, F.mul(a, b))
    return s


@dataclass(frozen=True)
class ScalarAction:
    """Acts as ``scalar`` on span(``on``) and as the identity on span(``fixed``)."""
    scalar: int
    on: tuple
    fixed: tuple


@dataclass
class AffineGroup:
    """``V ⋊ A`` as a permutation group on the vectors of ``V``."""
    group: FiniteGroup
    space: VectorSpace
    linear: dict[str, int] = field(default_factory=dict)  # named linear maps -> element index
    handles: dict[str, Subgroup] = field(default_factory=dict)

    @property
    def field(self) -> GF:
        return self.space.F

    def translations(self, vectors: Sequence[Vector]) -> Subgroup:
        """The translation subgroup of the subspace spanned by ``vectors``."""
        V = self.space
        G = self.group
        return G.intern(G.index(V.translation_perm(v)) for v in V.span(vectors))

    def element(self, M: Matrix) -> int:
        return self.group.index(self.space.linear_perm(M))

    def basis_vector(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.space.dim))

    def block_basis(self, dims: Sequence[int], block: int) -> list[Vector]:
        start = sum(dims[:block])
        return [self.basis_vector(start + j) for j in range(dims[block])]


def affine_group(q: int, dim: int, matrices: Sequence[Matrix] = (), include_translations: bool = True,
                 names: Sequence[str] | None = None, name: str = "G") -> AffineGroup:
    F = GF(q)
    V = VectorSpace(F, dim)
    gens = []
    if include_translations:
        for i in range(dim):
            for c in range(1, q):
                e = tuple(c if j == i else 0 for j in range(dim))
                gens.append(V.translation_perm(e))
    for M in matrices:
        V.inverse(M)
        gens.append(V.linear_perm(M))
    if not gens:
        gens.append(tuple(range(V.size)))
    G = build_group_from_permutations(V.size, gens, name=name)
    aff = AffineGroup(G, V)
    for nm, M in zip(names or [], matrices):
        aff.linear[nm] = aff.element(M)
    return aff


def matrix_group(q: int, matrices: Sequence[Matrix], name: str = "G") -> AffineGroup:
    """The linear group generated by ``matrices`` acting on GF(q)^n."""
    dim = len(matrices[0])
    return affine_group(q, dim, matrices, include_translations=False, name=name)


def build_vector_space_semidirect(q: int, dims: Sequence[int], scalars: Sequence[ScalarAction],
                                  names: Sequence[str] | None = None) -> AffineGroup:
    """``S ⋊ A`` where ``S = GF(q)^sum(dims)`` and ``A`` is generated by ``scalars``."""
    F = GF(q)
    V = VectorSpace(F, sum(dims))
    mats = []
    for act in scalars:
        if not 0 < act.scalar < q:
            raise FixtureError(f"scalar {act.scalar} is not a unit of GF({q})")
        mats.append(V.scalar_on(act.scalar, act.on, act.fixed))
    return affine_group(q, V.dim, mats, names=names)
