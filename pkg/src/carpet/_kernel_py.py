"""Pure-Python twin of the compiled box-search kernel.

Same contract as carpet._kernel.solve_box, but all arithmetic uses
Python ints, so it is exact for any magnitude.  It is the fallback when
the extension is missing, when CARPET_PURE_PYTHON is set, or when the
caller's worst-case bound check rules out int64.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np


def solve_box(gram, majorant, d, bound, x0_lo, x0_hi):
    """All x with q(x)=d, x0 in [x0_lo, x0_hi], |x_i|<=bound, x != 0."""
    g = [[int(v) for v in row] for row in gram]
    r = len(g)
    if r < 2 or any(len(row) != r for row in g):
        raise ValueError("gram must be square with rank >= 2")
    mj = [[float(v) for v in row] for row in majorant]
    if len(mj) != r or any(len(row) != r for row in mj):
        raise ValueError("majorant shape must match gram")
    if bound < 0 or x0_lo > x0_hi:
        return np.empty((0, r), dtype=np.int64)

    d = int(d)
    bound = int(bound)
    target = abs(d) - 0.5
    a = g[r - 1][r - 1]
    grow = g[r - 1]
    rows: list[tuple[int, ...]] = []

    def unreachable(prefix: tuple[int, ...]) -> bool:
        ub = 0.0
        k = len(prefix)
        ext = [abs(p) for p in prefix] + [bound] * (r - k)
        for i in range(r):
            mi = mj[i]
            ui = ext[i]
            ub += ui * sum(mi[j] * ext[j] for j in range(r))
        return ub < target

    def emit(prefix: tuple[int, ...], t: int) -> None:
        if t != 0 or any(prefix):
            rows.append(prefix + (t,))

    def solve_last(prefix: tuple[int, ...]) -> None:
        c = 0
        lin = 0
        for i in range(r - 1):
            gi = g[i]
            pi = prefix[i]
            c += pi * sum(gi[j] * prefix[j] for j in range(r - 1))
            lin += grow[i] * pi
        if a != 0:
            disc = lin * lin - a * (c - d)
            if disc < 0:
                return
            s = math.isqrt(disc)
            if s * s != disc:
                return
            for num in ((-lin + s), (-lin - s)) if s else ((-lin,)):
                if num % a == 0:
                    t = num // a
                    if -bound <= t <= bound:
                        emit(prefix, t)
            return
        if lin != 0:
            num = d - c
            if num % (2 * lin) == 0:
                t = num // (2 * lin)
                if -bound <= t <= bound:
                    emit(prefix, t)
            return
        if c == d:
            for t in range(-bound, bound + 1):
                emit(prefix, t)

    def descend(prefix: tuple[int, ...], lo: int, hi: int) -> None:
        k = len(prefix)
        for t in range(lo, hi + 1):
            cur = prefix + (t,)
            if k <= r - 3 and unreachable(cur):
                continue
            if k == r - 2:
                solve_last(cur)
            else:
                descend(cur, -bound, bound)

    descend((), x0_lo, x0_hi)
    if not rows:
        return np.empty((0, r), dtype=np.int64)
    return np.array(rows, dtype=np.int64)
