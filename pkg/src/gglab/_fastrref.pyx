# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction kernel for prime fields.

Twin of ``_purerref.rref_mod``: in-place RREF of an int64 matrix mod p,
returning the pivot columns.
"""

import numpy as np


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a is nonzero mod p
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod(long long[:, ::1] mat, long long p):
    """Reduce ``mat`` (entries in 0..p-1) to RREF in place, mod p."""
    cdef Py_ssize_t m = mat.shape[0], n = mat.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef long long inv, f, v
    pivots = []
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if mat[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(n):
                v = mat[r, j]
                mat[r, j] = mat[pr, j]
                mat[pr, j] = v
        inv = _inv_mod(mat[r, c], p)
        for j in range(n):
            mat[r, j] = (mat[r, j] * inv) % p
        for i in range(m):
            if i != r and mat[i, c] != 0:
                f = mat[i, c]
                for j in range(n):
                    mat[i, j] = (mat[i, j] - f * mat[r, j]) % p
                    if mat[i, j] < 0:
                        mat[i, j] += p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots
