from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from quadrel import linalg as la
from quadrel.errors import DimensionMismatch, ParseError, SingularMatrix
from quadrel.gf2m import GF2m

F = GF2m(4)


def naive_rank(M) -> int:
    """Row reduction with scalar field calls only."""
    A = [list(map(int, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, v) for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a ^ F.mul(f, b) for a, b in zip(A[i], A[r])]
        r += 1
    return r


def mats(max_rows=7, max_cols=7, hi=15):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda s: arrays(np.int64, s, elements=st.integers(0, hi)))


def low_rank(draw_rank, rows, cols, rng):
    A = F.random(rng, size=(rows, draw_rank))
    B = F.random(rng, size=(draw_rank, cols))
    return la.mat_mul(F, A, B)


@given(mats())
def test_rank_matches_naive(M):
    assert la.rank(F, M) == naive_rank(M)


@given(mats())
def test_kernel_is_annihilated_and_complete(M):
    K = la.right_kernel(F, M)
    assert K.shape[0] == M.shape[1] - la.rank(F, M)
    if K.shape[0]:
        assert not la.mat_mul(F, M, la.transpose(K)).any()
        assert la.rank(F, K) == K.shape[0]
    L = la.left_kernel(F, M)
    if L.shape[0]:
        assert not la.mat_mul(F, L, M).any()


@given(mats(), mats())
def test_intersection_dimension_formula(A, B):
    if A.shape[1] != B.shape[1]:
        with pytest.raises(DimensionMismatch):
            la.Subspace(F, A).intersect(la.Subspace(F, B))
        return
    U, W = la.Subspace(F, A), la.Subspace(F, B)
    I = U.intersect(W)
    assert U.dim + W.dim == U.sum(W).dim + I.dim
    for v in I.basis:
        assert U.contains(v) and W.contains(v)


@given(mats())
def test_dual_dimension(A):
    U = la.Subspace(F, A)
    D = U.dual()
    assert U.dim + D.dim == U.n
    if U.dim and D.dim:
        assert not la.mat_mul(F, U.basis, la.transpose(D.basis)).any()


def test_inverse_and_solve(rng):
    for _ in range(20):
        A = F.random(rng, size=(6, 6))
        if la.rank(F, A) < 6:
            with pytest.raises(SingularMatrix):
                la.inverse(F, A)
            continue
        Ai = la.inverse(F, A)
        assert np.array_equal(la.mat_mul(F, A, Ai), np.eye(6, dtype=np.int64))
        b = F.random(rng, size=6)
        x = la.solve(F, A, b)
        assert np.array_equal(la.mat_vec(F, A, x), b)


def test_solve_inconsistent(rng):
    A = low_rank(2, 5, 5, rng)
    b = F.random(rng, size=5)
    while la.rank(F, np.vstack([A.T, b])) == la.rank(F, A):
        b = F.random(rng, size=5)
    with pytest.raises(SingularMatrix):
        la.solve(F, A, b)


def test_planted_ranks(rng):
    for r in range(0, 6):
        M = low_rank(r, 8, 9, rng) if r else np.zeros((8, 9), np.int64)
        assert la.rank(F, M) <= r
        assert la.rank(F, M) == naive_rank(M)


def test_row_space_equal_is_basis_invariant(rng):
    A = F.random(rng, size=(4, 10))
    P = F.random(rng, size=(4, 4))
    while la.rank(F, P) < 4:
        P = F.random(rng, size=(4, 4))
    assert la.row_space_equal(F, A, la.mat_mul(F, P, A))
    B = A.copy()
    B[0, 0] ^= 1
    assert la.row_space_equal(F, A, B) == (la.rank(F, np.vstack([A, B])) == la.rank(F, A))


@given(arrays(np.uint8, st.tuples(st.integers(1, 8), st.integers(1, 12)), elements=st.integers(0, 1)))
def test_f2_routines_agree_with_extension(M):
    assert la.rank_f2(M) == la.rank(F, M)
    K = la.right_kernel_f2(M)
    assert K.shape[0] == M.shape[1] - la.rank_f2(M)
    if K.shape[0]:
        assert not ((M.astype(int) @ K.T.astype(int)) % 2).any()


def test_binary_dual_and_subfield_subcode(rng):
    G = rng.integers(0, 2, size=(5, 12)).astype(np.uint8)
    D = la.binary_dual(G)
    assert D.shape[0] == 12 - la.rank_f2(G)
    assert not ((G.astype(int) @ D.T.astype(int)) % 2).any()
    # binary vectors orthogonal to the extended code are the binary dual
    assert la.row_space_equal_f2(la.subfield_subcode(F, la.extend_scalars(G)), D)


def test_schur_span(rng):
    C = F.random(rng, size=(3, 12))
    assert la.schur_products(F, C).shape == (6, 12)
    assert la.schur_span(F, C).dim <= 6


def test_matrix_text_round_trip(rng):
    M = F.random(rng, size=(3, 5))
    back, fld = la.parse_matrix(la.format_matrix(M, F))
    assert fld == F and np.array_equal(back, M)
    B = rng.integers(0, 2, size=(4, 7)).astype(np.uint8)
    back, fld = la.parse_matrix(la.format_matrix(B))
    assert fld is None and np.array_equal(back, B)
    with pytest.raises(ParseError):
        la.parse_matrix("MAT 2 3 F2\n101\n")
    with pytest.raises(ParseError):
        la.parse_matrix("MAT 1 3 F2\n121\n")
