"""Integer quadratic lattices of arbitrary signature.

A lattice is a free Z-module with an integer Gram matrix; all norm,
signature and discriminant computations below are exact.  Floating
point enters the pipeline only later, in the projection step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence, Union

import numpy as np

from . import exact


class DimensionMismatchError(ValueError):
    """Vector length does not match the lattice rank."""


class DegenerateLatticeError(ValueError):
    """Operation requires a nondegenerate Gram matrix."""


class NonIntegralReflectionError(ValueError):
    """Reflection coefficient 2*B(x,v)/q(v) is not an integer."""


class Signature(NamedTuple):
    pos: int
    neg: int
    zero: int


@dataclass(frozen=True)
class LatticeVector:
    """Integer coordinate vector with its norm cached by the owning lattice."""

    coords: tuple[int, ...]
    norm: int

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-c for c in self.coords), self.norm)


VectorLike = Union[LatticeVector, Sequence[int]]


def coords_of(v: VectorLike) -> tuple[int, ...]:
    if isinstance(v, LatticeVector):
        return v.coords
    return tuple(int(c) for c in v)


@dataclass(frozen=True)
class DiscriminantData:
    """Nontrivial elementary divisors of the Gram matrix, in divisibility order."""

    elementary_divisors: tuple[int, ...]

    @property
    def group_order(self) -> int:
        return math.prod(self.elementary_divisors)

    def fp_dimension(self, p: int) -> int:
        return sum(1 for d in self.elementary_divisors if d % p == 0)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> int:
    if not _is_prime(p):
        raise ValueError(f"p={p} is not prime")
    return p


@dataclass(frozen=True)
class GramLattice:
    """Free Z-module of finite rank with a symmetric integer Gram matrix."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.gram)
        if not rows:
            raise ValueError("empty Gram matrix")
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("Gram matrix must be square")
        if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return exact.det(self.gram)

    def vector(self, coords: VectorLike) -> LatticeVector:
        c = coords_of(coords)
        return LatticeVector(c, self.norm(c))

    def norm(self, v: VectorLike) -> int:
        """q(v) = v^T * gram * v, exactly."""
        c = coords_of(v)
        if len(c) != self.rank:
            raise DimensionMismatchError(f"expected {self.rank} coords, got {len(c)}")
        g = self.gram
        return sum(c[i] * sum(g[i][j] * c[j] for j in range(self.rank))
                   for i in range(self.rank))

    def bilinear(self, u: VectorLike, v: VectorLike) -> int:
        """B(u, v) = u^T * gram * v, exactly."""
        a = coords_of(u)
        b = coords_of(v)
        if len(a) != self.rank or len(b) != self.rank:
            raise DimensionMismatchError("vector length does not match rank")
        g = self.gram
        return sum(a[i] * sum(g[i][j] * b[j] for j in range(self.rank))
                   for i in range(self.rank))

    def signature(self) -> Signature:
        """Exact inertia (positive, negative, zero eigenvalue counts).

        Zero multiplicity comes from the exact integer rank; the split of
        the remaining eigenvalues uses Descartes' rule of signs on the
        characteristic polynomial, which is sharp for real-rooted
        polynomials.  No floating tolerance is involved.
        """
        zero = self.rank - exact.rank(self.gram)
        pos, neg = exact.real_root_signs(exact.char_poly(self.gram), zero)
        return Signature(pos, neg, zero)

    def restrict(self, vectors: Sequence[VectorLike]) -> "GramLattice":
        """Gram matrix of the pairwise bilinear products of the given vectors."""
        vs = [coords_of(v) for v in vectors]
        if not vs:
            raise ValueError("restrict needs at least one vector")
        return GramLattice(tuple(tuple(self.bilinear(u, v) for v in vs) for u in vs))

    def discriminant(self) -> DiscriminantData:
        """Elementary divisors of the Gram matrix, ones dropped."""
        if self.det == 0:
            raise DegenerateLatticeError("discriminant needs a nondegenerate lattice")
        divisors = exact.smith_normal_form(self.gram)
        return DiscriminantData(tuple(d for d in divisors if d != 1))

    def disc_fp_dimension(self, p: int) -> int:
        """dim over F_p of (discriminant group) tensor F_p."""
        require_prime(p)
        return self.discriminant().fp_dimension(p)

    def reflect(self, x: VectorLike, v: VectorLike) -> LatticeVector:
        """Reflection of x in the hyperplane orthogonal to v.

        r_v(x) = x - (2 B(x,v) / q(v)) v; raises unless the coefficient
        is an integer, so the result stays in the lattice.
        """
        xc = coords_of(x)
        vc = coords_of(v)
        qv = self.norm(vc)
        if qv == 0:
            raise DegenerateLatticeError("cannot reflect in an isotropic vector")
        twice = 2 * self.bilinear(xc, vc)
        if twice % qv != 0:
            raise NonIntegralReflectionError(
                f"2*B(x,v)={twice} not divisible by q(v)={qv}")
        k = twice // qv
        return self.vector(tuple(xc[i] - k * vc[i] for i in range(self.rank)))


@dataclass(frozen=True)
class IsotropyCertificate:
    """Outcome of the mod-p^depth descent scan."""

    status: str  # "certified-none" or "inconclusive"
    prime: int
    depth: int
    witness: tuple[int, ...] | None = None


def isotropic_mod_p_certificate(
    lattice: GramLattice,
    p: int,
    depth: int = 2,
    max_candidates: int = 200_000_000,
) -> IsotropyCertificate:
    """Scan (Z/p^depth)^r for solutions of q(x) = 0 with a unit coordinate.

    Any nonzero isotropic lattice vector can be scaled primitive, and a
    primitive vector keeps a coordinate prime to p after reduction mod
    p^depth.  If the scan finds no such residue solution, the lattice
    has no nonzero isotropic vectors at all ("certified-none").  A found
    residue solution proves nothing either way ("inconclusive").
    """
    require_prime(p)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    r = lattice.rank
    m = p ** depth
    if m ** r > max_candidates:
        raise ValueError(
            f"scan size {m}^{r} exceeds the work limit; lower depth or p")
    gram = np.array(lattice.gram, dtype=np.int64) % m
    tail = np.indices((m,) * (r - 1), dtype=np.int64).reshape(r - 1, -1).T
    for x0 in range(m):
        coords = np.concatenate(
            [np.full((tail.shape[0], 1), x0, dtype=np.int64), tail], axis=1)
        vals = np.einsum("ni,ij,nj->n", coords, gram, coords) % m
        primitive = (coords % p != 0).any(axis=1)
        hits = np.flatnonzero((vals == 0) & primitive)
        if hits.size:
            witness = tuple(int(c) for c in coords[hits[0]])
            return IsotropyCertificate("inconclusive", p, depth, witness)
    return IsotropyCertificate("certified-none", p, depth, None)
