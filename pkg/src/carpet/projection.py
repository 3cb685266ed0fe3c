"""Frames and projections for signature (1,3) lattices.

The only floating-point ingress of the pipeline: an eigenframe of the
Gram matrix scaled so every basis vector has unit |norm|, giving
coordinates in which the form is x0^2 - x1^2 - x2^2 - x3^2.  Wall
vectors then cut circles on the unit sphere, and a stereographic
projection turns those into discs, holes and half-planes in the plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .lattice import GramLattice, LatticeVector, Signature, VectorLike, coords_of

HYPERBOLIC_SIGNATURE = Signature(1, 3, 0)


class WrongSignatureError(ValueError):
    """Gram matrix is not of signature (1,3)."""


class EigenConvergenceError(RuntimeError):
    """Jacobi sweeps failed to reach the requested tolerance."""


class DegenerateRegionError(ValueError):
    """Wall vector projects to no circle or line in the plane."""


class MinkowskiVector(tuple):
    """Coordinates (x0, x1, x2, x3) with form x0^2 - x1^2 - x2^2 - x3^2."""

    __slots__ = ()

    def __new__(cls, x0: float, x1: float, x2: float, x3: float):
        return super().__new__(cls, (float(x0), float(x1), float(x2), float(x3)))

    @property
    def x0(self) -> float:
        return self[0]

    @property
    def x1(self) -> float:
        return self[1]

    @property
    def x2(self) -> float:
        return self[2]

    @property
    def x3(self) -> float:
        return self[3]

    def norm(self) -> float:
        return self[0] * self[0] - self[1] * self[1] - self[2] * self[2] - self[3] * self[3]


def _jacobi_eigh(matrix: Sequence[Sequence[float]], tol: float,
                 max_sweeps: int) -> tuple[list[float], list[list[float]]]:
    """Cyclic Jacobi diagonalization; returns (eigenvalues, eigenvector columns)."""
    n = len(matrix)
    a = [[float(matrix[i][j]) for j in range(n)] for i in range(n)]
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    scale = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n))) or 1.0
    for _ in range(max_sweeps):
        off = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= tol * scale:
            return [a[i][i] for i in range(n)], v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    akp, akq = a[p][k], a[q][k]
                    a[p][k] = c * akp - s * akq
                    a[q][k] = s * akp + c * akq
                for k in range(n):
                    vkp, vkq = v[k][p], v[k][q]
                    v[k][p] = c * vkp - s * vkq
                    v[k][q] = s * vkp + c * vkq
    off = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
    if off > tol * scale:
        raise EigenConvergenceError(
            f"off-diagonal {off:.3e} above tolerance after {max_sweeps} sweeps")
    return [a[i][i] for i in range(n)], v


@dataclass(frozen=True, eq=False)
class MinkowskiFrame:
    """Scaled eigenframe of a (1,3) lattice.

    `forward` maps integer lattice coordinates to Minkowski coordinates
    (x = forward @ v); `inverse` goes back.  Eigenvalues are sorted
    descending, so index 0 is the positive one.
    """

    lattice: GramLattice
    eigenvalues: tuple[float, float, float, float]
    basis: tuple[tuple[float, ...], ...]  # rows: Euclidean-orthonormal eigenvectors
    forward: np.ndarray
    inverse: np.ndarray
    tol: float

    def to_minkowski(self, v: VectorLike) -> MinkowskiVector:
        c = coords_of(v)
        if len(c) != 4:
            raise ValueError("frame expects rank-4 vectors")
        x = self.forward @ np.asarray(c, dtype=np.float64)
        return MinkowskiVector(x[0], x[1], x[2], x[3])

    def apply(self, rows: np.ndarray) -> np.ndarray:
        """Batch version of to_minkowski for an (n, 4) integer array."""
        return np.asarray(rows, dtype=np.float64) @ self.forward.T


def build_frame(lattice: GramLattice, tol: float = 1e-12,
                max_sweeps: int = 64) -> MinkowskiFrame:
    """Diagonalize a (1,3) Gram matrix into a unit-|norm| eigenframe.

    The signature is checked exactly before any floating-point work, so
    a wrong-shape lattice fails loudly rather than producing a bogus
    frame.  Eigenvector signs are fixed by making each vector's largest
    component positive, which keeps downstream output reproducible.
    """
    sig = lattice.signature()
    if sig != HYPERBOLIC_SIGNATURE:
        raise WrongSignatureError(f"need signature (1,3,0), got {tuple(sig)}")
    eigvals, cols = _jacobi_eigh(lattice.gram, tol, max_sweeps)
    order = sorted(range(4), key=lambda i: -eigvals[i])
    lams = [eigvals[i] for i in order]
    vecs = []
    for i in order:
        w = [cols[k][i] for k in range(4)]
        pivot = max(range(4), key=lambda k: abs(w[k]))
        if w[pivot] < 0.0:
            w = [-entry for entry in w]
        vecs.append(tuple(w))
    scales = [math.sqrt(abs(l)) for l in lams]
    if min(scales) <= tol:
        raise WrongSignatureError("numerically degenerate eigenvalue in frame")
    forward = np.array([[scales[i] * vecs[i][j] for j in range(4)]
                        for i in range(4)], dtype=np.float64)
    inverse = np.array([[vecs[j][i] / scales[j] for j in range(4)]
                        for i in range(4)], dtype=np.float64)
    return MinkowskiFrame(
        lattice=lattice,
        eigenvalues=(lams[0], lams[1], lams[2], lams[3]),
        basis=tuple(vecs),
        forward=forward,
        inverse=inverse,
        tol=tol,
    )


@dataclass(frozen=True)
class SphereCap:
    """Open region {y on S^2 : normal . y > offset} cut by a wall."""

    normal: tuple[float, float, float]
    offset: float
    source: LatticeVector | None = None

    @property
    def empty(self) -> bool:
        return self.offset >= 1.0

    @property
    def full(self) -> bool:
        return self.offset <= -1.0

    @property
    def circle_center(self) -> tuple[float, float, float]:
        h = self.offset
        return (h * self.normal[0], h * self.normal[1], h * self.normal[2])

    @property
    def circle_radius(self) -> float:
        if self.empty or self.full:
            raise DegenerateRegionError("cap boundary does not meet the sphere")
        return math.sqrt(1.0 - self.offset * self.offset)


def boundary_circle(frame: MinkowskiFrame, v: VectorLike) -> SphereCap:
    """Sphere cap {x1*y1 + x2*y2 + x3*y3 > x0} cut by wall v on the unit sphere."""
    vec = v if isinstance(v, LatticeVector) else frame.lattice.vector(v)
    x = frame.to_minkowski(vec)
    nn = math.hypot(x.x1, x.x2, x.x3)
    if nn <= frame.tol * max(1.0, abs(x.x0)):
        raise DegenerateRegionError("wall is proportional to the time axis")
    return SphereCap((x.x1 / nn, x.x2 / nn, x.x3 / nn), x.x0 / nn, source=vec)


@dataclass(frozen=True)
class DiscRegion:
    """Open planar region cut by a wall after stereographic projection.

    kind 'disc': interior of a circle; 'hole': exterior of a circle;
    'halfplane': {normal . z > offset} with unit normal.
    """

    kind: str
    center: tuple[float, float] | None = None
    radius: float | None = None
    normal: tuple[float, float] | None = None
    offset: float | None = None
    source: LatticeVector | None = None

    def distance_outside(self, points: np.ndarray) -> np.ndarray:
        """Euclidean distance from each point to the closed region (0 inside)."""
        pts = np.asarray(points, dtype=np.float64)
        if self.kind == "halfplane":
            val = pts @ np.asarray(self.normal) - self.offset
            return np.maximum(-val, 0.0)
        sep = np.hypot(pts[..., 0] - self.center[0], pts[..., 1] - self.center[1])
        if self.kind == "disc":
            return np.maximum(sep - self.radius, 0.0)
        return np.maximum(self.radius - sep, 0.0)

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Strict membership in the open region."""
        pts = np.asarray(points, dtype=np.float64)
        if self.kind == "halfplane":
            return pts @ np.asarray(self.normal) > self.offset
        sep2 = (pts[..., 0] - self.center[0]) ** 2 + (pts[..., 1] - self.center[1]) ** 2
        if self.kind == "disc":
            return sep2 < self.radius * self.radius
        return sep2 > self.radius * self.radius


def region_from_minkowski(x: Sequence[float], source: LatticeVector | None = None,
                          tol: float = 1e-12,
                          exact_norm: int | None = None) -> DiscRegion:
    """Planar region {|z|^2 (x1-x0) + 2 x2 z1 + 2 x3 z2 > x0 + x1}.

    The boundary circle has center (x2, x3)/(x0-x1) and radius
    sqrt(|q(x)|)/|x1-x0|; the sign of x1-x0 picks disc versus hole, and
    x1 == x0 (to a scale-relative tolerance) degenerates to a half-plane.
    """
    x0, x1, x2, x3 = (float(c) for c in x)
    scale = max(abs(x0), abs(x1), abs(x2), abs(x3))
    if scale == 0.0:
        raise DegenerateRegionError("zero vector has no wall")
    s = x1 - x0
    if abs(s) <= tol * scale:
        nn = math.hypot(x2, x3)
        if nn <= tol * scale:
            raise DegenerateRegionError("wall meets the plane nowhere")
        return DiscRegion(
            kind="halfplane",
            normal=(x2 / nn, x3 / nn),
            offset=(x0 + x1) / (2.0 * nn),
            source=source,
        )
    qf = float(exact_norm) if exact_norm is not None else (
        x0 * x0 - x1 * x1 - x2 * x2 - x3 * x3)
    if qf >= 0.0:
        raise DegenerateRegionError("wall vector must have negative norm")
    center = (x2 / (x0 - x1), x3 / (x0 - x1))
    radius = math.sqrt(-qf) / abs(s)
    return DiscRegion(
        kind="disc" if s < 0.0 else "hole",
        center=center,
        radius=radius,
        source=source,
    )


def disc_region(frame: MinkowskiFrame, v: VectorLike) -> DiscRegion:
    """Planar region cut by lattice wall v (exact norm, floating frame)."""
    vec = v if isinstance(v, LatticeVector) else frame.lattice.vector(v)
    return region_from_minkowski(
        frame.to_minkowski(vec), source=vec, tol=frame.tol, exact_norm=vec.norm)


def sphere_to_plane(y: Sequence[float]) -> tuple[float, float]:
    """Stereographic projection from the pole (1, 0, 0)."""
    y1, y2, y3 = (float(c) for c in y)
    den = 1.0 - y1
    if abs(den) < 1e-15:
        raise DegenerateRegionError("point at the projection pole")
    return (y2 / den, y3 / den)


def plane_to_sphere(z: Sequence[float]) -> tuple[float, float, float]:
    """Inverse stereographic projection onto the unit sphere."""
    z1, z2 = (float(c) for c in z)
    w = z1 * z1 + z2 * z2
    return ((w - 1.0) / (w + 1.0), 2.0 * z1 / (w + 1.0), 2.0 * z2 / (w + 1.0))


def sphere_to_cone(y: Sequence[float]) -> tuple[float, float, float, float]:
    """Lift a sphere point to projective isotropic Minkowski coordinates."""
    y1, y2, y3 = (float(c) for c in y)
    w = y1 * y1 + y2 * y2 + y3 * y3
    return (1.0 + w, 2.0 * y1, 2.0 * y2, 2.0 * y3)
