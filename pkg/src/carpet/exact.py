"""Exact integer linear algebra: determinants, rank, characteristic
polynomials and Smith normal form, all over arbitrary-precision ints.

Everything here works on plain nested sequences of Python ints so that
no intermediate value is ever rounded or overflowed.
"""

from __future__ import annotations

from typing import Sequence

IntMatrix = Sequence[Sequence[int]]


def _copy(mat: IntMatrix) -> list[list[int]]:
    out = [[int(x) for x in row] for row in mat]
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged matrix")
    return out


def det(mat: IntMatrix) -> int:
    """Determinant via fraction-free (Bareiss) elimination."""
    a = _copy(mat)
    n = len(a)
    if n == 0:
        return 1
    if len(a[0]) != n:
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(mat: IntMatrix) -> int:
    """Exact rank via fraction-free elimination with full pivoting."""
    a = _copy(mat)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def char_poly(mat: IntMatrix) -> list[int]:
    """Monic characteristic polynomial of a square integer matrix.

    Returns coefficients [1, c1, ..., cn] of det(t*I - A) using the
    Faddeev-LeVerrier recurrence; every division is exact over Z.
    """
    a = _copy(mat)
    n = len(a)
    if n and len(a[0]) != n:
        raise ValueError("characteristic polynomial needs a square matrix")
    coeffs = [1]
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = [[sum(a[i][l] * m[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        if tr % k != 0:
            raise ArithmeticError("non-exact division in Faddeev-LeVerrier")
        ck = -tr // k
        coeffs.append(ck)
        m = [[am[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def sign_variations(coeffs: Sequence[int]) -> int:
    """Number of sign changes in a coefficient sequence, zeros skipped."""
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def real_root_signs(coeffs: Sequence[int], zero_count: int) -> tuple[int, int]:
    """Positive/negative root counts of a real-rooted monic polynomial.

    `zero_count` must be the exact multiplicity of the root 0 (for a
    symmetric matrix: dimension minus rank).  Descartes' rule of signs
    is sharp for polynomials all of whose roots are real, so the counts
    returned here are exact, not bounds.
    """
    n = len(coeffs) - 1
    for i in range(zero_count):
        if coeffs[n - i] != 0:
            raise ValueError("declared zero multiplicity exceeds actual")
    reduced = list(coeffs[: n - zero_count + 1])
    pos = sign_variations(reduced)
    neg = sign_variations([c if (len(reduced) - 1 - i) % 2 == 0 else -c
                           for i, c in enumerate(reduced)])
    return pos, neg


def _min_pivot_to_corner(a: list[list[int]], t: int) -> bool:
    rows, cols = len(a), len(a[0])
    best = None
    where = None
    for i in range(t, rows):
        for j in range(t, cols):
            v = abs(a[i][j])
            if v and (best is None or v < best):
                best, where = v, (i, j)
    if where is None:
        return False
    i0, j0 = where
    if i0 != t:
        a[t], a[i0] = a[i0], a[t]
    if j0 != t:
        for row in a:
            row[t], row[j0] = row[j0], row[t]
    return True


def smith_normal_form(mat: IntMatrix) -> list[int]:
    """Nonnegative invariant factors d1 | d2 | ... of an integer matrix.

    Returns one entry per row/column of the reduced diagonal, including
    trailing zeros when the matrix is rank deficient.
    """
    a = _copy(mat)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out: list[int] = []
    t = 0
    while t < min(rows, cols):
        if not _min_pivot_to_corner(a, t):
            break
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    for j in range(t, cols):
                        a[i][j] -= q * a[t][j]
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                    dirty = dirty or a[t][j] != 0
            if dirty:
                _min_pivot_to_corner(a, t)
                continue
            offender = None
            for i in range(t + 1, rows):
                if any(a[i][j] % p for j in range(t + 1, cols)):
                    offender = i
                    break
            if offender is None:
                break
            for j in range(cols):
                a[t][j] += a[offender][j]
        out.append(abs(a[t][t]))
        t += 1
    out.extend(0 for _ in range(min(rows, cols) - len(out)))
    return out
