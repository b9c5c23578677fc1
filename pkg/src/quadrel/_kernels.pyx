# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_kernels_py``.

Same signatures and same in-place semantics; the import-time selector in
``_core`` picks this module when it has been built.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

ctypedef cnp.int64_t i64


ctypedef fused small_t:
    cnp.uint8_t
    cnp.uint16_t


cdef list _rref_small(small_t[:, ::1] A, const i64[::1] exp, const i64[::1] log,
                      const cnp.uint8_t[::1] table, Py_ssize_t q1, Py_ssize_t ncols):
    # table is the full q x q product table when q <= 256, else empty
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p, t, nnz, q = q1 + 1
    cdef i64 shift, lf
    cdef small_t tmp, f
    cdef bint use_table = table.shape[0] > 0
    cdef Py_ssize_t *idx = <Py_ssize_t *> malloc(cols * sizeof(Py_ssize_t))
    cdef i64 *val = <i64 *> malloc(cols * sizeof(i64))
    cdef small_t *prow
    cdef small_t *row
    cdef const cnp.uint8_t *trow
    pivots = []
    try:
        for c in range(ncols):
            if r == rows:
                break
            p = -1
            for i in range(r, rows):
                if A[i, c] != 0:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for j in range(c, cols):
                    tmp = A[r, j]
                    A[r, j] = A[p, j]
                    A[p, j] = tmp
            prow = &A[r, 0]
            shift = q1 - log[prow[c]]
            nnz = 0
            for j in range(c, cols):
                if prow[j] != 0:
                    prow[j] = <small_t> exp[log[prow[j]] + shift]
                    idx[nnz] = j
                    val[nnz] = prow[j] if use_table else log[prow[j]]
                    nnz += 1
            for i in range(rows):
                if i == r:
                    continue
                row = &A[i, 0]
                f = row[c]
                if f == 0:
                    continue
                if use_table:
                    trow = &table[<Py_ssize_t> f * q]
                    for t in range(nnz):
                        row[idx[t]] ^= trow[val[t]]
                else:
                    lf = log[f]
                    for t in range(nnz):
                        row[idx[t]] ^= <small_t> exp[lf + val[t]]
            pivots.append(c)
            r += 1
    finally:
        free(idx)
        free(val)
    return pivots


_TABLES = {}


def _table(const i64[::1] exp, const i64[::1] log, Py_ssize_t q1):
    key = np.asarray(exp).tobytes()
    tab = _TABLES.get(key)
    if tab is None:
        q = q1 + 1
        e = np.asarray(exp)
        lg = np.asarray(log)
        a = np.arange(q)
        tab = e[lg[a][:, None] + lg[a][None, :]].astype(np.uint8)
        tab[0, :] = 0
        tab[:, 0] = 0
        tab = np.ascontiguousarray(tab.ravel())
        _TABLES[key] = tab
    return tab


def rref_gf(i64[:, ::1] A, const i64[::1] exp, const i64[::1] log, Py_ssize_t q1,
            Py_ssize_t ncols=-1):
    """Reduced row-echelon form in place; elimination runs on a packed copy."""
    cdef Py_ssize_t cols = A.shape[1]
    if ncols < 0 or ncols > cols:
        ncols = cols
    arr = np.asarray(A)
    if q1 < 256:
        packed8 = arr.astype(np.uint8)
        piv = _rref_small[cnp.uint8_t](packed8, exp, log, _table(exp, log, q1), q1, ncols)
        arr[...] = packed8
    else:
        packed16 = arr.astype(np.uint16)
        piv = _rref_small[cnp.uint16_t](packed16, exp, log,
                                        np.zeros(0, dtype=np.uint8), q1, ncols)
        arr[...] = packed16
    return piv


def rref_f2(cnp.uint8_t[:, ::1] A, Py_ssize_t ncols=-1):
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef cnp.uint8_t t
    if ncols < 0 or ncols > cols:
        ncols = cols
    pivots = []
    for c in range(ncols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if A[i, c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(c, cols):
                t = A[r, j]
                A[r, j] = A[p, j]
                A[p, j] = t
        for i in range(rows):
            if i != r and A[i, c]:
                for j in range(c, cols):
                    A[i, j] ^= A[r, j]
        pivots.append(c)
        r += 1
    return pivots


def matmul_gf(const i64[:, ::1] A, const i64[:, ::1] B, const i64[::1] exp,
              const i64[::1] log):
    cdef Py_ssize_t n = A.shape[0], k = A.shape[1], p = B.shape[1], i, j, s
    if B.shape[0] != k:
        raise ValueError("inner dimensions differ")
    out_arr = np.zeros((n, p), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef i64 la, b
    for i in range(n):
        for s in range(k):
            if A[i, s] == 0:
                continue
            la = log[A[i, s]]
            for j in range(p):
                b = B[s, j]
                if b != 0:
                    out[i, j] ^= exp[la + log[b]]
    return out_arr
