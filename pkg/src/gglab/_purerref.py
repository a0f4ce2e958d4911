"""Pure-Python row-reduction kernels.

Fallback twin of the compiled ``_fastrref`` extension: ``rref_mod`` has
the identical contract (in-place reduction of an int64 matrix mod p,
returning the pivot columns) so the two are interchangeable.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def rref_mod(mat: np.ndarray, p: int) -> list[int]:
    """Reduce ``mat`` (int64, entries in 0..p-1) to RREF in place, mod p."""
    m, n = mat.shape
    if m == 0 or n == 0:
        return []
    rows = [list(map(int, r)) for r in mat]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [(a - f * b) % p for a, b in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    mat[...] = np.array(rows, dtype=np.int64)
    return pivots


def rref_frac(mat: np.ndarray) -> list[int]:
    """Reduce an object matrix of Fractions to RREF in place."""
    m, n = mat.shape
    rows = [[Fraction(x) for x in r] for r in mat]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if rows[i][c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(m):
        for j in range(n):
            mat[i, j] = rows[i][j]
    return pivots
