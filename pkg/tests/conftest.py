"""Shared lattice data and slow-object caches for the test suite."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from carpet import GramLattice, build_frame

# The bundled illustration lattices, in config order.
GRAMS = {
    "ex0": ((-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1)),
    "ex1": ((-1, 2, 0, 0), (2, -1, 1, 0), (0, 1, -2, 1), (0, 0, 1, -2)),
    "ex2": ((5, 0, 0, 0), (0, -1, 0, 0), (0, 0, -5, 0), (0, 0, 0, -5)),
    "ex3": ((125, 0, 0, 0), (0, -25, 0, 0), (0, 0, -5, 0), (0, 0, 0, -1)),
    "ex4": ((3, 0, 0, 0), (0, -1, 0, 0), (0, 0, -63, 0), (0, 0, 0, -63)),
    "ex5": ((-2, 5, 0, 0), (5, 0, 0, 0), (0, 0, -10, 5), (0, 0, 5, -10)),
    "ex6": ((-1, 2, 0, 0), (2, 0, 0, 0), (0, 0, -2, 0), (0, 0, 0, -2)),
}
WALL_NORM = {"ex0": -1, "ex1": -1, "ex2": -1, "ex3": -1, "ex4": -1,
             "ex5": -2, "ex6": -1}

# Test-only lattices used by several modules.
DOUBLED_INTERSECT = ((10, 0, 0, 0), (0, -2, 0, 0), (0, 0, -10, 0), (0, 0, 0, -10))
NONBARAGAR = ((46, 0, 0, 0), (0, -2, 0, 0), (0, 0, -46, 0), (0, 0, 0, -46))
ANISO7 = ((3, 0, 0, 0), (0, -1, 0, 0), (0, 0, -7, 0), (0, 0, 0, -7))
NO_ISO_MOD7 = ((150, 0, 0, 0), (0, -2, 0, 0), (0, 0, -350, 0), (0, 0, 0, -350))
RK3_RANK5 = ((20, 0, 0, 0, 0), (0, -2, 0, 0, 0), (0, 0, -2, 0, 0),
             (0, 0, 0, -20, 0), (0, 0, 0, 0, -20))


@lru_cache(maxsize=None)
def lat(name: str) -> GramLattice:
    return GramLattice(GRAMS[name])


@lru_cache(maxsize=None)
def frame_of(name: str):
    return build_frame(lat(name))


def cofactor_det(mat) -> int:
    """Independent determinant oracle: textbook cofactor expansion."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def fraction_rank(mat) -> int:
    """Independent rank oracle: Gaussian elimination over Fraction."""
    rows = [[Fraction(x) for x in row] for row in mat]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0),
                     None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def random_symmetric(rng, n: int, span: int = 50):
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            mat[i][j] = mat[j][i] = rng.randint(-span, span)
    return tuple(tuple(row) for row in mat)


def random_unimodular(rng, n: int, steps: int = 12):
    """Product of random elementary row additions and swaps (det is +-1)."""
    mat = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        if rng.random() < 0.2:
            mat[i], mat[j] = mat[j], mat[i]
        else:
            c = rng.randint(-2, 2)
            mat[i] = [a + c * b for a, b in zip(mat[i], mat[j])]
    return mat


def conjugate(gram, s):
    """s^T G s as exact int rows; a change of basis of the same lattice span."""
    n = len(gram)
    gs = [[sum(gram[i][k] * s[k][j] for k in range(n)) for j in range(n)]
          for i in range(n)]
    return tuple(tuple(sum(s[k][i] * gs[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


class PixelOracle:
    """Sampled containment oracle for disc and hole regions.

    Each subset question gets its own grid: a violation of "inner lies
    in outer" can only sit inside the inner disc, or, when the inner is
    a hole, inside the closed disc the outer hole excludes.  That set is
    bounded, so a grid over it at a resolution relative to its radius
    decides the question.  A sample counts only when it clears both
    boundaries by 1.5 grid pitches, so boundary fuzz cannot flip a
    verdict; slivers thinner than a few relative pitches are the only
    blind spot.  A hole is never inside a disc: it reaches infinity.
    """

    def __init__(self, regions, res=256):
        self.regions = list(regions)
        self.res = res
        for r in self.regions:
            if r.kind == "halfplane":
                raise NotImplementedError("oracle handles discs and holes")

    def _grid(self, base):
        import numpy as np
        half = base.radius * 1.02
        axis = (np.arange(self.res) + 0.5) * (2 * half / self.res) - half
        x, y = np.meshgrid(axis + base.center[0], axis + base.center[1],
                           indexing="ij")
        return x.ravel(), y.ravel(), 1.5 * (2 * half / self.res)

    @staticmethod
    def _signed(r, x, y):
        import numpy as np
        d = np.hypot(x - r.center[0], y - r.center[1])
        return r.radius - d if r.kind == "disc" else d - r.radius

    def subset(self, i, j):
        import numpy as np
        ri, rj = self.regions[i], self.regions[j]
        if ri.kind == "hole" and rj.kind == "disc":
            return False
        base = ri if ri.kind == "disc" else rj
        x, y, delta = self._grid(base)
        si = self._signed(ri, x, y)
        sj = self._signed(rj, x, y)
        return not np.any((si > delta) & (sj < -delta))

    def antichain(self):
        keep = []
        n = len(self.regions)
        for i in range(n):
            dominated = False
            for j in range(n):
                if i == j:
                    continue
                if self.subset(i, j):
                    if i < j and self.subset(j, i):
                        continue
                    dominated = True
                    break
            if not dominated:
                keep.append(i)
        return keep


def window_masks(regions, half, res):
    """Robust-inside and raw boolean masks over a fixed square window."""
    import numpy as np
    axis = (np.arange(res) + 0.5) * (2 * half / res) - half
    x, y = np.meshgrid(axis, axis, indexing="ij")
    delta = 1.5 * (2 * half / res)
    robust, raw = [], []
    for r in regions:
        s = PixelOracle._signed(r, x, y)
        robust.append(s > delta)
        raw.append(s > 0)
    return robust, raw
