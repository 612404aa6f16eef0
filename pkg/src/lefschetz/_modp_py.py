"""Numpy fallback for the compiled F_p elimination kernel (same interface)."""

from __future__ import annotations

import numpy as np


def _eliminate(a: np.ndarray, p: int, full: bool) -> list[int]:
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv], c:] = a[[piv, r], c:]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        rows = np.arange(m) if full else np.arange(r + 1, m)
        rows = rows[(rows != r) & (a[rows, c] != 0)]
        if rows.size:
            factors = a[rows, c][:, None]
            a[np.ix_(rows, np.arange(c, n))] = (a[rows, c:] - factors * a[r, c:][None, :]) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_modp(a: np.ndarray, p: int) -> int:
    """Rank of ``a`` over F_p. ``a`` is not modified."""
    work = np.mod(np.asarray(a, dtype=np.int64), p)
    if work.size == 0:
        return 0
    return len(_eliminate(work, p, False))


def rref_modp(a: np.ndarray, p: int):
    """Reduced row echelon form over F_p; returns (matrix, pivot columns)."""
    work = np.mod(np.asarray(a, dtype=np.int64), p)
    if work.size == 0:
        return work, []
    pivots = _eliminate(work, p, True)
    return work, pivots
