# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Gaussian elimination over F_p on dense int64 matrices.

For p < 2**21 row updates are accumulated without reduction; an entry
receives at most min(rows, cols) updates of size < p**2, which stays below
2**63. Larger primes (p < 2**31) reduce after every update.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef int64_t LAZY_LIMIT = 2097152  # 2**21


cdef int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


cdef Py_ssize_t _eliminate(int64_t[:, ::1] a, int64_t p, bint full,
                           Py_ssize_t[::1] pivots) nogil:
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t v, f, inv, tmp
    cdef bint lazy = p < LAZY_LIMIT
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            v = a[i, c] % p
            a[i, c] = v
            if v != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv(a[r, c], p)
        for j in range(c, n):
            a[r, j] = (a[r, j] % p) * inv % p
        for i in range(0 if full else r + 1, m):
            if i == r:
                continue
            v = a[i, c] % p
            if v == 0:
                a[i, c] = 0
                continue
            f = p - v
            a[i, c] = 0
            if lazy:
                for j in range(c + 1, n):
                    a[i, j] += f * a[r, j]
            else:
                for j in range(c + 1, n):
                    a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots[r] = c
        r += 1
    return r


def rank_modp(cnp.ndarray a, long long p):
    """Rank of ``a`` over F_p. ``a`` is not modified."""
    cdef int64_t[:, ::1] work = np.ascontiguousarray(np.mod(a, p), dtype=np.int64)
    cdef Py_ssize_t[::1] piv = np.empty(min(work.shape[0], work.shape[1]) + 1, dtype=np.intp)
    cdef Py_ssize_t r
    if work.shape[0] == 0 or work.shape[1] == 0:
        return 0
    with nogil:
        r = _eliminate(work, p, False, piv)
    return int(r)


def rref_modp(cnp.ndarray a, long long p):
    """Reduced row echelon form over F_p; returns (matrix, pivot columns)."""
    cdef int64_t[:, ::1] work = np.ascontiguousarray(np.mod(a, p), dtype=np.int64)
    cdef Py_ssize_t[::1] piv = np.empty(min(work.shape[0], work.shape[1]) + 1, dtype=np.intp)
    cdef Py_ssize_t r = 0
    if work.shape[0] and work.shape[1]:
        with nogil:
            r = _eliminate(work, p, True, piv)
    out = np.mod(np.asarray(work), p)
    out[r:, :] = 0
    return out, [int(piv[k]) for k in range(r)]
