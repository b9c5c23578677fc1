"""Pure numpy implementations of the hot kernels.

These are the reference versions; ``_kernels.pyx`` mirrors them loop for loop.
Matrices are C-contiguous int64 arrays of field elements (or uint8 bits for
F_2) and are reduced in place.
"""

from __future__ import annotations

import numpy as np


def rref_gf(A: np.ndarray, exp: np.ndarray, log: np.ndarray, q1: int,
            ncols: int = -1) -> list[int]:
    """Reduced row-echelon form over GF(2^m), in place.

    Pivots are searched in the first ``ncols`` columns only (all columns when
    negative); row operations always span the full width.
    """
    rows, cols = A.shape
    if ncols < 0 or ncols > cols:
        ncols = cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        # rows >= r are zero left of c, so only the tail needs updating
        row = A[r, c:]
        row[:] = exp[log[row] + (q1 - log[row[0]])]
        colv = A[:, c].copy()
        colv[r] = 0
        idx = np.flatnonzero(colv)
        if idx.size:
            A[idx, c:] ^= exp[log[colv[idx]][:, None] + log[row][None, :]]
        pivots.append(c)
        r += 1
    return pivots


def rref_f2(A: np.ndarray, ncols: int = -1) -> list[int]:
    """Reduced row-echelon form over F_2 of a uint8 0/1 array, in place."""
    rows, cols = A.shape
    if ncols < 0 or ncols > cols:
        ncols = cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        colv = A[:, c].copy()
        colv[r] = 0
        idx = np.flatnonzero(colv)
        if idx.size:
            A[idx, c:] ^= A[r, c:]
        pivots.append(c)
        r += 1
    return pivots


def matmul_gf(A: np.ndarray, B: np.ndarray, exp: np.ndarray, log: np.ndarray) -> np.ndarray:
    """Matrix product over GF(2^m)."""
    n, k = A.shape
    k2, p = B.shape
    assert k == k2
    out = np.zeros((n, p), dtype=np.int64)
    if k == 0:
        return out
    la = log[A]
    lb = log[B]
    # chunk over the inner dimension to bound the temporary's size
    step = max(1, (1 << 22) // max(1, n * p))
    for s in range(0, k, step):
        t = exp[la[:, s : s + step, None] + lb[None, s : s + step, :]]
        out ^= np.bitwise_xor.reduce(t, axis=1)
    return out
