"""Dense linear algebra over F_2 and GF(2^m).

Matrices over GF(2^m) are int64 numpy arrays of field elements, matrices over
F_2 are uint8 arrays of bits.  Functions taking a field context ``F`` work over
GF(2^m); the ``*_f2`` variants work over F_2.  Nothing here mutates its inputs.
"""

from __future__ import annotations

import numpy as np

from . import _core
from .errors import DimensionMismatch, ParseError, SingularMatrix
from .gf2m import GF2m


def as_ext(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        A = A[None, :]
    return np.ascontiguousarray(A)


def as_bin(M) -> np.ndarray:
    A = np.asarray(M)
    if A.ndim == 1:
        A = A[None, :]
    return np.ascontiguousarray(A.astype(np.uint8) & 1)


# ---------------------------------------------------------------------------
# GF(2^m)


def rref_pivots(F: GF2m, M, ncols: int = -1) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns (pivots searched in the
    first ``ncols`` columns when given)."""
    A = as_ext(M).copy()
    piv = _core.rref_gf(A, F.exp, F.log, F.q1, ncols)
    return A, list(piv)


def rref(F: GF2m, M) -> tuple[np.ndarray, int]:
    A, piv = rref_pivots(F, M)
    return A, len(piv)


def rank(F: GF2m, M) -> int:
    M = as_ext(M)
    if M.size == 0:
        return 0
    return rref(F, M)[1]


def row_basis(F: GF2m, M) -> np.ndarray:
    """RREF rows spanning the row space (zero rows dropped)."""
    M = as_ext(M)
    if M.shape[0] == 0:
        return M.copy()
    A, r = rref(F, M)
    return A[:r].copy()


def row_space_equal(F: GF2m, A, B) -> bool:
    A, B = as_ext(A), as_ext(B)
    if A.shape[1] != B.shape[1]:
        raise DimensionMismatch("row spaces live in different ambient spaces")
    RA, RB = row_basis(F, A), row_basis(F, B)
    return RA.shape == RB.shape and bool(np.array_equal(RA, RB))


def _kernel_from_rref(R: np.ndarray, piv: list[int], cols: int) -> np.ndarray:
    free = np.setdiff1d(np.arange(cols), piv)
    K = np.zeros((free.size, cols), dtype=R.dtype)
    K[np.arange(free.size), free] = 1
    if piv:
        # char 2: moving R[i, f] x_f to the other side changes no sign
        K[:, piv] = R[: len(piv)][:, free].T
    return K


def right_kernel(F: GF2m, M) -> np.ndarray:
    """Basis (as rows) of {v : M v^T = 0}."""
    M = as_ext(M)
    if M.shape[0] == 0:
        return np.eye(M.shape[1], dtype=np.int64)
    R, piv = rref_pivots(F, M)
    return _kernel_from_rref(R, piv, M.shape[1])


def left_kernel(F: GF2m, M) -> np.ndarray:
    """Basis (as rows) of {v : v M = 0}."""
    return right_kernel(F, as_ext(M).T)


def transpose(M) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(M).T)


def mat_mul(F: GF2m, A, B) -> np.ndarray:
    A, B = as_ext(A), as_ext(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return _core.matmul_gf(A, B, F.exp, F.log)


def mat_vec(F: GF2m, A, v) -> np.ndarray:
    return mat_mul(F, A, np.asarray(v, dtype=np.int64)[:, None])[:, 0]


def inverse(F: GF2m, A) -> np.ndarray:
    A = as_ext(A)
    k = A.shape[0]
    if A.shape != (k, k):
        raise DimensionMismatch("only square matrices have inverses")
    R, piv = rref_pivots(F, np.hstack([A, np.eye(k, dtype=np.int64)]), k)
    if len(piv) != k:
        raise SingularMatrix("matrix is not invertible")
    return R[:, k:].copy()


def solve(F: GF2m, A, b) -> np.ndarray:
    """One solution x of A x = b (b a vector or a matrix of right-hand sides)."""
    A = as_ext(A)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    B = b[:, None] if vec else b
    if B.shape[0] != A.shape[0]:
        raise DimensionMismatch("right-hand side has the wrong length")
    n = A.shape[1]
    R, piv = rref_pivots(F, np.hstack([A, B]), n)
    r = len(piv)
    if np.any(R[r:, n:]):
        raise SingularMatrix("system has no solution")
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    X[piv] = R[:r, n:]
    return X[:, 0] if vec else X


def frobenius_mat(F: GF2m, M, j: int = 1) -> np.ndarray:
    return F.frobenius(as_ext(M), j)


def schur(F: GF2m, u, v) -> np.ndarray:
    u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
    if u.shape != v.shape:
        raise DimensionMismatch("Schur product needs equal lengths")
    return F.mul(u, v)


def schur_products(F: GF2m, C) -> np.ndarray:
    """All products c_i * c_j for i <= j, row-major in i."""
    C = as_ext(C)
    i, j = np.triu_indices(C.shape[0])
    return F.mul(C[i], C[j])


def schur_span(F: GF2m, C) -> "Subspace":
    return Subspace(F, schur_products(F, C))


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of GF(2^m)^n stored as an RREF basis."""

    __slots__ = ("F", "basis", "n")

    def __init__(self, F: GF2m, rows, n: int | None = None):
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim == 1:
            rows = rows[None, :] if rows.size else rows.reshape(0, n or 0)
        if n is None:
            n = rows.shape[1]
        elif rows.shape[1] != n:
            raise DimensionMismatch("basis rows do not match the ambient dimension")
        self.F = F
        self.n = n
        self.basis = row_basis(F, rows) if rows.shape[0] else np.zeros((0, n), np.int64)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.n})"

    def _check(self, other: "Subspace"):
        if self.n != other.n:
            raise DimensionMismatch("subspaces of different ambient spaces")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        return self.dim == other.dim and bool(np.array_equal(self.basis, other.basis))

    __hash__ = None  # type: ignore[assignment]

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(-1, self.n)
        return rank(self.F, np.vstack([self.basis, v])) == self.dim

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.F, np.vstack([self.basis, other.basis]), self.n)

    def dual(self) -> "Subspace":
        if self.dim == 0:
            return Subspace(self.F, np.eye(self.n, dtype=np.int64))
        return Subspace(self.F, right_kernel(self.F, self.basis), self.n)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.F, np.zeros((0, self.n), np.int64), self.n)
        # x U = y W  <=>  (x, y) in left kernel of [U; W]
        K = left_kernel(self.F, np.vstack([self.basis, other.basis]))
        if K.shape[0] == 0:
            return Subspace(self.F, np.zeros((0, self.n), np.int64), self.n)
        return Subspace(self.F, mat_mul(self.F, K[:, : self.dim], self.basis), self.n)

    def frobenius(self, j: int = 1) -> "Subspace":
        return Subspace(self.F, self.F.frobenius(self.basis, j), self.n)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    return U.sum(V)


def subspace_intersect(U: Subspace, V: Subspace) -> Subspace:
    return U.intersect(V)


def subspace_dual(U: Subspace) -> Subspace:
    return U.dual()


# ---------------------------------------------------------------------------
# F_2


def rref_f2(M) -> tuple[np.ndarray, list[int]]:
    A = as_bin(M).copy()
    piv = _core.rref_f2(A, -1)
    return A, list(piv)


def rank_f2(M) -> int:
    M = as_bin(M)
    if M.size == 0:
        return 0
    return len(rref_f2(M)[1])


def row_basis_f2(M) -> np.ndarray:
    A, piv = rref_f2(M)
    return A[: len(piv)].copy()


def right_kernel_f2(M) -> np.ndarray:
    M = as_bin(M)
    if M.shape[0] == 0:
        return np.eye(M.shape[1], dtype=np.uint8)
    R, piv = rref_f2(M)
    return _kernel_from_rref(R, piv, M.shape[1])


def row_space_equal_f2(A, B) -> bool:
    RA, RB = row_basis_f2(A), row_basis_f2(B)
    return RA.shape == RB.shape and bool(np.array_equal(RA, RB))


def binary_expand(F: GF2m, C) -> np.ndarray:
    """Each row over GF(2^m) becomes m rows over F_2 (one per basis bit)."""
    C = as_ext(C)
    bits = (C[:, None, :] >> np.arange(F.m)[None, :, None]) & 1
    return bits.reshape(C.shape[0] * F.m, C.shape[1]).astype(np.uint8)


def subfield_subcode(F: GF2m, C) -> np.ndarray:
    """Generator (RREF) of {c in F_2^n : C c^T = 0}."""
    C = as_ext(C)
    K = right_kernel_f2(binary_expand(F, C))
    return row_basis_f2(K) if K.shape[0] else K


def extend_scalars(G) -> np.ndarray:
    return as_bin(G).astype(np.int64)


def binary_dual(G) -> np.ndarray:
    K = right_kernel_f2(G)
    return row_basis_f2(K) if K.shape[0] else K


# ---------------------------------------------------------------------------
# text format


def format_matrix(M, F: GF2m | None = None) -> str:
    """``MAT rows cols <field-header|F2>`` followed by one line per row."""
    M = np.asarray(M)
    rows, cols = M.shape
    if F is None:
        lines = [f"MAT {rows} {cols} F2"]
        lines += ["".join("1" if b else "0" for b in row) for row in M]
    else:
        lines = [f"MAT {rows} {cols} {F.header()}"]
        lines += [" ".join(f"{int(v):x}" for v in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple[np.ndarray, GF2m | None]:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty matrix text")
    head = lines[0].split(None, 3)
    if len(head) != 4 or head[0] != "MAT":
        raise ParseError(f"bad matrix header: {lines[0]!r}")
    try:
        rows, cols = int(head[1]), int(head[2])
    except ValueError as exc:
        raise ParseError(f"bad matrix header: {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} rows, found {len(body)}")
    if head[3] == "F2":
        M = np.zeros((rows, cols), dtype=np.uint8)
        for i, ln in enumerate(body):
            if len(ln) != cols or set(ln) - {"0", "1"}:
                raise ParseError(f"bad F2 row {i}")
            M[i] = np.frombuffer(ln.encode(), dtype=np.uint8) - ord("0")
        return M, None
    F = GF2m.from_header(head[3])
    M = np.zeros((rows, cols), dtype=np.int64)
    for i, ln in enumerate(body):
        parts = ln.split()
        if len(parts) != cols:
            raise ParseError(f"row {i} has {len(parts)} entries, expected {cols}")
        try:
            vals = [int(p, 16) for p in parts]
        except ValueError as exc:
            raise ParseError(f"bad hex entry in row {i}") from exc
        if any(v < 0 or v >= F.order for v in vals):
            raise ParseError(f"entry out of field range in row {i}")
        M[i] = vals
    return M, F
