# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled box search for integer vectors of prescribed norm.

Walks every assignment of the first r-1 coordinates (coordinate 0 over a
caller-supplied slice, so threads can split the box) and solves the
trailing coordinate from the quadratic it satisfies.  Subtrees are
skipped when a positive-definite majorant of the form shows the target
norm is unreachable.  All arithmetic is int64; the caller is responsible
for checking that the worst-case intermediate values fit.
"""

from libc.math cimport sqrt
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline long long _isqrt(long long v) nogil:
    cdef long long s
    if v < 0:
        return -1
    s = <long long>sqrt(<double>v)
    while s > 0 and s * s > v:
        s -= 1
    while (s + 1) * (s + 1) <= v:
        s += 1
    return s


cdef struct Buf:
    long long* data
    Py_ssize_t rows
    Py_ssize_t cap
    int r


cdef inline int _emit(Buf* b, long long* x, long long last) nogil:
    cdef int i
    cdef int nonzero = 0
    cdef long long* grown
    for i in range(b.r - 1):
        if x[i] != 0:
            nonzero = 1
            break
    if not nonzero and last == 0:
        return 0
    if b.rows == b.cap:
        b.cap = b.cap * 2
        grown = <long long*>realloc(b.data, b.cap * b.r * sizeof(long long))
        if grown == NULL:
            return -1
        b.data = grown
    for i in range(b.r - 1):
        b.data[b.rows * b.r + i] = x[i]
    b.data[b.rows * b.r + b.r - 1] = last
    b.rows += 1
    return 0


cdef inline int _unreachable(double[:, ::1] mj, int r, long long* x, int k,
                             long long bound, long long d) nogil:
    """True when the majorant caps |q| below |d| on the whole subtree."""
    cdef double ub = 0.0
    cdef double ui, uj
    cdef int i, j
    for i in range(r):
        ui = <double>(x[i] if x[i] >= 0 else -x[i]) if i <= k else <double>bound
        for j in range(r):
            uj = <double>(x[j] if x[j] >= 0 else -x[j]) if j <= k else <double>bound
            ub += mj[i, j] * ui * uj
    return ub < <double>(d if d >= 0 else -d) - 0.5


cdef int _solve_last(long long[:, ::1] g, int r, long long d, long long bound,
                     long long* x, Buf* b) nogil:
    cdef long long c = 0, lin = 0, a, disc, s, num, t
    cdef int i, j
    for i in range(r - 1):
        for j in range(r - 1):
            c += g[i, j] * x[i] * x[j]
        lin += g[r - 1, i] * x[i]
    a = g[r - 1, r - 1]
    if a != 0:
        disc = lin * lin - a * (c - d)
        if disc < 0:
            return 0
        s = _isqrt(disc)
        if s * s != disc:
            return 0
        num = -lin + s
        if num % a == 0:
            t = num // a
            if -bound <= t <= bound:
                if _emit(b, x, t) < 0:
                    return -1
        if s != 0:
            num = -lin - s
            if num % a == 0:
                t = num // a
                if -bound <= t <= bound:
                    if _emit(b, x, t) < 0:
                        return -1
        return 0
    if lin != 0:
        num = d - c
        if num % (2 * lin) == 0:
            t = num // (2 * lin)
            if -bound <= t <= bound:
                if _emit(b, x, t) < 0:
                    return -1
        return 0
    if c == d:
        for t in range(-bound, bound + 1):
            if _emit(b, x, t) < 0:
                return -1
    return 0


cdef int _descend(long long[:, ::1] g, double[:, ::1] mj, int r, long long d,
                  long long bound, long long lo, long long hi,
                  long long* x, int k, Buf* b) nogil:
    cdef long long t
    for t in range(lo, hi + 1):
        x[k] = t
        if k <= r - 3 and _unreachable(mj, r, x, k, bound, d):
            continue
        if k == r - 2:
            if _solve_last(g, r, d, bound, x, b) < 0:
                return -1
        else:
            if _descend(g, mj, r, d, bound, -bound, bound, x, k + 1, b) < 0:
                return -1
    return 0


def solve_box(gram, majorant, long long d, long long bound,
              long long x0_lo, long long x0_hi):
    """All x with q(x)=d, x0 in [x0_lo, x0_hi], |x_i|<=bound, x != 0.

    Returns an int64 array of shape (n, r); row order follows the
    odometer walk and is not canonical.
    """
    cdef long long[:, ::1] g = np.ascontiguousarray(gram, dtype=np.int64)
    cdef double[:, ::1] mj = np.ascontiguousarray(majorant, dtype=np.float64)
    cdef int r = g.shape[0]
    if g.shape[1] != r or r < 2 or r > 8:
        raise ValueError("gram must be square with 2 <= rank <= 8")
    if mj.shape[0] != r or mj.shape[1] != r:
        raise ValueError("majorant shape must match gram")
    if bound < 0 or x0_lo > x0_hi:
        return np.empty((0, r), dtype=np.int64)

    cdef Buf b
    b.r = r
    b.cap = 1024
    b.rows = 0
    b.data = <long long*>malloc(b.cap * r * sizeof(long long))
    if b.data == NULL:
        raise MemoryError()
    cdef long long x[8]
    cdef int status
    with nogil:
        status = _descend(g, mj, r, d, bound, x0_lo, x0_hi, &x[0], 0, &b)
    if status < 0:
        free(b.data)
        raise MemoryError()

    out = np.empty((b.rows, r), dtype=np.int64)
    cdef long long[:, ::1] view
    if b.rows:
        view = out
        memcpy(&view[0, 0], b.data, b.rows * r * sizeof(long long))
    free(b.data)
    return out
