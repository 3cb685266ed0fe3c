"""Enumeration of lattice vectors of prescribed negative norm.

The box search runs in a compiled kernel when the extension built, with
a pure-Python twin selected at import time as fallback (or forced via
CARPET_PURE_PYTHON=1).  Threads split the box along the first
coordinate; results are deduplicated and canonically sorted afterwards,
so the outcome is independent of thread count and kernel choice.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernel_py
from .lattice import GramLattice, LatticeVector
from .projection import MinkowskiFrame

try:
    from . import _kernel as _compiled
except ImportError:  # extension not built
    _compiled = None

CLIP_WINDOW = 1.05  # half-width of the rendering viewport


def active_kernel():
    """Kernel module picked at call time (env override wins)."""
    if _compiled is not None and not os.environ.get("CARPET_PURE_PYTHON"):
        return _compiled
    return _kernel_py


def kernel_name() -> str:
    return "pure" if active_kernel() is _kernel_py else "compiled"


def _int64_safe(lattice: GramLattice, d: int, bound: int) -> bool:
    """Worst-case intermediate magnitudes of the kernel fit in int64."""
    g = lattice.gram
    smax = sum(abs(x) for row in g for x in row) * bound * bound
    lmax = max(sum(abs(x) for x in row) for row in g) * bound
    amax = max(abs(g[i][i]) for i in range(lattice.rank))
    disc_max = lmax * lmax + amax * (smax + abs(d))
    return max(smax + abs(d), disc_max, (lmax + 1) ** 2) < 2 ** 61


def _majorant(lattice: GramLattice) -> np.ndarray:
    """Entrywise bound on the positive-definite spectral |gram|.

    Used only to prune subtrees where |q| provably stays below |d|; a
    slight float inflation keeps the bound safe.
    """
    a = np.array(lattice.gram, dtype=np.float64)
    lam, w = np.linalg.eigh(a)
    spectral = (w * np.abs(lam)) @ w.T
    return np.abs(spectral) * (1.0 + 1e-9) + 1e-9


def _split_ranges(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    width = hi - lo + 1
    parts = max(1, min(parts, width))
    step = width // parts
    extra = width % parts
    out = []
    start = lo
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0) - 1
        out.append((start, stop))
        start = stop + 1
    return out


def _solve_full_box(lattice: GramLattice, d: int, bound: int,
                    threads: int) -> np.ndarray:
    kern = active_kernel()
    if kern is not _kernel_py and not _int64_safe(lattice, d, bound):
        kern = _kernel_py
    gram = np.array(lattice.gram, dtype=np.int64) if kern is not _kernel_py \
        else lattice.gram
    mj = _majorant(lattice)
    if threads <= 1:
        return kern.solve_box(gram, mj, d, bound, -bound, bound)
    ranges = _split_ranges(-bound, bound, threads * 4)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(
            lambda rng: kern.solve_box(gram, mj, d, bound, rng[0], rng[1]),
            ranges))
    parts = [p for p in parts if p.shape[0]]
    if not parts:
        return np.empty((0, lattice.rank), dtype=np.int64)
    return np.concatenate(parts, axis=0)


def _canonical_sign(row: tuple[int, ...]) -> tuple[int, ...]:
    for c in row:
        if c > 0:
            return row
        if c < 0:
            return tuple(-x for x in row)
    return row


def enumerate_norm(lattice: GramLattice, d: int, bound: int,
                   threads: int = 1) -> list[LatticeVector]:
    """Primitive vectors of norm d with |coords| <= bound, one per +-pair.

    Representatives are sign-canonical (first nonzero coordinate
    positive) and sorted lexicographically.
    """
    if bound < 1:
        raise ValueError("coordinate bound must be >= 1")
    raw = _solve_full_box(lattice, d, bound, threads)
    seen = {_canonical_sign(tuple(int(c) for c in row)) for row in raw}
    out = []
    for coords in sorted(seen):
        if math.gcd(*coords) == 1:
            out.append(LatticeVector(coords, d))
    return out


def isotropic_search(lattice: GramLattice, bound: int,
                     threads: int = 1) -> list[LatticeVector]:
    """Primitive nonzero isotropic vectors with |coords| <= bound, up to sign."""
    return enumerate_norm(lattice, 0, bound, threads)


@dataclass(frozen=True)
class EnumRequest:
    """Wall-enumeration parameters: norm d < 0, box bound, optional radius cut."""

    d: int
    coord_bound: int
    min_disc_radius: float | None = None

    def __post_init__(self) -> None:
        if self.d >= 0:
            raise ValueError("wall norm d must be negative")
        if self.coord_bound < 1:
            raise ValueError("coord_bound must be >= 1")
        if self.min_disc_radius is not None and self.min_disc_radius <= 0:
            raise ValueError("min_disc_radius must be positive when given")


@dataclass(frozen=True)
class WallSet:
    """Oriented wall vectors of one norm, canonically sorted.

    Orientation puts x0 > 0 (walls through x0 = 0 are turned so their
    region is the exterior kind); the sort is by |x1 - x0| ascending,
    then lexicographic coordinates.  `pruned` records whether any wall
    was dropped by the min_disc_radius cut.
    """

    lattice: GramLattice
    d: int
    coord_bound: int
    min_disc_radius: float | None
    vectors: tuple[LatticeVector, ...]
    pruned: bool

    def __len__(self) -> int:
        return len(self.vectors)


def enumerate_walls(frame: MinkowskiFrame, request: EnumRequest,
                    threads: int = 1) -> WallSet:
    """Enumerate, orient and sort the walls of one norm inside the box."""
    lattice = frame.lattice
    reps = enumerate_norm(lattice, request.d, request.coord_bound, threads)
    rows = np.array([v.coords for v in reps], dtype=np.float64).reshape(-1, 4)
    xs = frame.apply(rows)
    sqrt_d = math.sqrt(-request.d)
    oriented: list[tuple[float, tuple[int, ...]]] = []
    pruned = False
    for vec, x in zip(reps, xs):
        tol = 1e-12 * max(abs(float(c)) for c in x)
        flip = False
        if x[0] < -tol:
            flip = True
        elif abs(x[0]) <= tol:
            # wall through the model origin: pick the exterior-kind side
            if x[1] - x[0] < -tol:
                flip = True
        gap = abs(x[1] - x[0])
        radius = math.inf if gap <= tol else sqrt_d / gap
        if request.min_disc_radius is not None and radius < request.min_disc_radius:
            pruned = True
            continue
        coords = tuple(-c for c in vec.coords) if flip else vec.coords
        oriented.append((gap, coords))
    oriented.sort()
    vectors = tuple(LatticeVector(coords, request.d) for _, coords in oriented)
    return WallSet(
        lattice=lattice,
        d=request.d,
        coord_bound=request.coord_bound,
        min_disc_radius=request.min_disc_radius,
        vectors=vectors,
        pruned=pruned,
    )


def completeness_bound(frame: MinkowskiFrame, d: int, min_radius: float,
                       window: float = CLIP_WINDOW,
                       max_radius: float = 2.1) -> int:
    """Box bound capturing every wall with disc radius >= min_radius.

    The guarantee is scoped: it covers walls whose boundary circle has
    radius in [min_radius, max_radius] and center within
    max_radius + window*sqrt(2) of the origin, which is everything that
    can show a visible arc in the clip window at that radius.  Walls of
    even larger radius degenerate toward half-planes and admit no finite
    coordinate bound in general.  Within that scope the bound is
    conservative: |x1 - x0| <= sqrt|d|/min_radius, the center cap limits
    |(x2, x3)| and |x0 + x1|, and Cauchy-Schwarz against the orthonormal
    eigenbasis turns the Minkowski box into a coordinate box.
    """
    if d >= 0:
        raise ValueError("wall norm d must be negative")
    if min_radius <= 0:
        raise ValueError("min_radius must be positive")
    sqrt_d = math.sqrt(-d)
    gap_cap = sqrt_d / min_radius
    center_cap = max_radius + window * math.sqrt(2.0)
    sum_cap = center_cap * center_cap * gap_cap + sqrt_d * max_radius
    comp_cap = 0.5 * (sum_cap + gap_cap)
    side_cap = center_cap * gap_cap
    xmax = (comp_cap, comp_cap, side_cap, side_cap)
    total = math.sqrt(sum(
        xmax[j] * xmax[j] / abs(frame.eigenvalues[j]) for j in range(4)))
    return max(1, math.ceil(total))
