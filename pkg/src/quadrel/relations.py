"""Codes of quadratic relationships and their matrix form.

A quadratic relation between the rows v_1..v_k of a basis is a vector c with
sum_{i<=j} c_ij v_i * v_j = 0.  In characteristic 2 the matrix form keeps only
the off-diagonal part (a symmetric matrix with zero diagonal); the diagonal
part can always be rebuilt because sum c_ii v_i^2 is a square.

Bases are rm x n matrices.  Rows are grouped in m blocks of r rows; block l of
the canonical basis holds (x^a y)^(2^l), block j of a Frobenius-shaped basis
holds b_i^(2^j).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import linalg as la
from .errors import BadParams, DimensionMismatch, Exhausted, SingularMatrix
from .gf2m import GF2m


# ---------------------------------------------------------------------------
# bases and matrix codes


def frobenius_stack(F: GF2m, b: np.ndarray) -> np.ndarray:
    """Rows b_1..b_r, then their squares, ..., then their 2^(m-1) powers."""
    return np.vstack([F.frobenius(b, j) for j in range(F.m)])


def frobenius_basis(F: GF2m, public, r: int, rng: np.random.Generator,
                    budget: int = 64) -> np.ndarray:
    """Frobenius-shaped basis of the extended dual of a binary code."""
    dual = la.binary_dual(public).astype(np.int64)
    k = r * F.m
    if dual.shape[0] < k:
        raise Exhausted(f"dual has dimension {dual.shape[0]} < rm = {k}")
    for _ in range(budget):
        b = la.mat_mul(F, F.random(rng, size=(r, dual.shape[0])), dual)
        H = frobenius_stack(F, b)
        if la.rank(F, H) == k:
            return H
    raise Exhausted(f"no full-rank Frobenius basis in {budget} draws")


@dataclass(frozen=True)
class QuadRelCode:
    """Basis H (k x n) and a basis of Cmat(H) as a (dim, k, k) array."""

    H: np.ndarray
    mats: np.ndarray = field(repr=False)
    square_dim: int

    @property
    def dim(self) -> int:
        return self.mats.shape[0]

    @property
    def size(self) -> int:
        return self.H.shape[0]

    def combine(self, F: GF2m, lam) -> np.ndarray:
        """sum_t lam_t * mats[t]."""
        lam = np.asarray(lam, dtype=np.int64)
        flat = self.mats.reshape(self.dim, -1)
        return la.mat_mul(F, lam[None, :], flat).reshape(self.size, self.size)


def offdiag_vectors(M: np.ndarray) -> np.ndarray:
    """Strict upper triangles of one or several k x k matrices, flattened."""
    k = M.shape[-1]
    i, j = np.triu_indices(k, 1)
    return M[..., i, j]


def skew_from_vector(v: np.ndarray, k: int) -> np.ndarray:
    M = np.zeros((k, k), dtype=np.int64)
    i, j = np.triu_indices(k, 1)
    M[i, j] = v
    M[j, i] = v
    return M


def crel_cmat(F: GF2m, H) -> QuadRelCode:
    H = la.as_ext(H)
    k = H.shape[0]
    P = la.schur_products(F, H)
    rel = la.left_kernel(F, P)
    sq = P.shape[0] - rel.shape[0]
    i, j = np.triu_indices(k)
    off = rel[:, i != j]
    off = la.row_basis(F, off) if off.shape[0] else off
    mats = np.array([skew_from_vector(v, k) for v in off], dtype=np.int64)
    return QuadRelCode(H, mats.reshape(-1, k, k), sq)


def is_skew(M) -> bool:
    M = np.asarray(M)
    return M.ndim == 2 and M.shape[0] == M.shape[1] and \
        bool(np.array_equal(M, M.T)) and not np.any(np.diag(M))


def membership_check(F: GF2m, M, H) -> bool:
    """Whether M is the matrix form of a quadratic relation among rows of H."""
    M, H = la.as_ext(M), la.as_ext(H)
    k = H.shape[0]
    if M.shape != (k, k):
        raise DimensionMismatch(f"matrix of size {M.shape} for a basis of {k} rows")
    if not is_skew(M):
        return False
    i, j = np.triu_indices(k, 1)
    nz = M[i, j] != 0
    if not nz.any():
        return True
    i, j = i[nz], j[nz]
    s = np.bitwise_xor.reduce(F.mul(M[i, j][:, None], F.mul(H[i], H[j])), axis=0)
    t = F.sqrt(s)
    return la.rank(F, np.vstack([H, t])) == la.rank(F, H)


# ---------------------------------------------------------------------------
# Frobenius action


def shift_matrix(r: int, m: int) -> np.ndarray:
    """Block permutation with identity blocks at (j, j+1 mod m); H^(2) = S H."""
    k = r * m
    S = np.zeros((k, k), dtype=np.int64)
    for j in range(m):
        jn = (j + 1) % m
        S[j * r:(j + 1) * r, jn * r:(jn + 1) * r] = np.eye(r, dtype=np.int64)
    return S


def frobenius_conjugate(F: GF2m, M, r: int, power: int = 1) -> np.ndarray:
    """(S^T)^p M^(2^p) S^p, computed as a block rotation."""
    M = la.as_ext(M)
    m = M.shape[0] // r
    p = power % m
    if p == 0:
        return M.copy()
    # S^p maps block j to block j + p, so conjugation rotates blocks down by p
    perm = (np.arange(M.shape[0]) - p * r) % M.shape[0]
    return F.frobenius(M, p)[np.ix_(perm, perm)]


def congruence_check(F: GF2m, A_code: QuadRelCode, B_code: QuadRelCode, P) -> bool:
    """Whether {P^T M P : M in B_code} and A_code span the same space."""
    P = la.as_ext(P)
    if la.rank(F, P) != P.shape[0]:
        raise SingularMatrix("change of basis is not invertible")
    if A_code.dim != B_code.dim:
        return False
    PT = la.transpose(P)
    moved = np.array([la.mat_mul(F, la.mat_mul(F, PT, M), P) for M in B_code.mats])
    if A_code.dim == 0:
        return True
    return la.row_space_equal(F, offdiag_vectors(moved), offdiag_vectors(A_code.mats))


def change_of_basis(F: GF2m, HB, HA) -> np.ndarray:
    """P with HB = P HA (both of full row rank)."""
    return la.transpose(la.solve(F, la.transpose(HA), la.transpose(HB)))


# ---------------------------------------------------------------------------
# structured catalog


@dataclass(frozen=True)
class TypeParams:
    """Parameters of a structured element of Cmat of the canonical basis.

    ``assignment`` (Type 5 only) maps each a in [0, r] either to a single
    row b, or to a dict {b: weight} whose weights sum to gamma_a.
    """

    tag: int
    l: int = 0
    u: int | None = None
    a: int | None = None
    b: int | None = None
    c: int | None = None
    d: int | None = None
    s: int | None = None
    assignment: dict | None = None

    def describe(self) -> str:
        keys = ["l", "u", "a", "b", "c", "d", "s"]
        return ",".join(f"{k}={getattr(self, k)}" for k in keys if getattr(self, k) is not None)


def e_ac(r: int) -> int:
    return int(math.floor(math.log2(r + 1) + 1e-12))


def v_bound(r: int) -> int:
    return int(math.floor(math.log2(r) + 1e-12)) if r >= 1 else 0


def type5_rows(r: int, delta: int, s: int) -> list[list[int]]:
    """B_a for a in [0, r]."""
    p = 1 << delta
    out = []
    for a in range(r + 1):
        lo = max(0, -((-(a + s - r + 1)) // p))
        hi = min(r - 1, (a + s) // p)
        out.append(list(range(lo, hi + 1)))
    return out


def type5_default_assignment(r: int, delta: int, s: int) -> dict[int, int]:
    """Concentrate every a on two consecutive rows {b0, b0+1}, b0 minimal."""
    rows = type5_rows(r, delta, s)
    if any(not B for B in rows):
        raise BadParams(f"some B_a is empty for r={r}, delta={delta}, s={s}")
    for b0 in range(r):
        pair = (b0, b0 + 1)
        if all(any(b in pair for b in B) for B in rows):
            return {a: min(b for b in B if b in pair) for a, B in enumerate(rows)}
    raise BadParams(f"no two-row layout for r={r}, delta={delta}, s={s}")


def _block(M: np.ndarray, r: int, bi: int, i: int, bj: int, j: int, val: int):
    M[bi * r + i, bj * r + j] ^= val
    M[bj * r + j, bi * r + i] ^= val


def _check_range(r: int, m: int, **idx):
    for name, v in idx.items():
        hi = m if name in ("l", "u") else r
        if v is None or not 0 <= v < hi:
            raise BadParams(f"{name}={v} outside [0, {hi - 1}]")


def make_type(F: GF2m, t: TypeParams, r: int, gamma=None) -> np.ndarray:
    """The rm x rm matrix of a structured relation w.r.t. the canonical basis.

    gamma (the Goppa polynomial, low to high) is needed for Type 5 only.
    """
    m = F.m
    k = r * m
    M = np.zeros((k, k), dtype=np.int64)
    tag = t.tag
    if tag == 1:
        _check_range(r, m, l=t.l, a=t.a, b=t.b, c=t.c)
        if r < 3 or not (t.a < t.c < t.b) or t.a + t.b != 2 * t.c:
            raise BadParams("Type 1 needs r >= 3, a < c < b and a + b = 2c")
        # the -2 on the diagonal vanishes in characteristic 2
        _block(M, r, t.l, t.a, t.l, t.b, 1)
    elif tag == 2:
        _check_range(r, m, l=t.l, a=t.a, b=t.b, c=t.c, d=t.d)
        if r < 4 or not (t.a < t.c < t.d < t.b) or t.a + t.b != t.c + t.d:
            raise BadParams("Type 2 needs r >= 4, a < c < d < b and a + b = c + d")
        _block(M, r, t.l, t.a, t.l, t.b, 1)
        _block(M, r, t.l, t.c, t.l, t.d, 1)
    elif tag == 3:
        _check_range(r, m, l=t.l, a=t.a, b=t.b)
        if not t.a < t.b:
            raise BadParams("Type 3 needs a < b")
        _block(M, r, t.l, t.a, t.l, t.b, 1)
    elif tag == 4:
        _check_range(r, m, l=t.l, u=t.u, a=t.a, b=t.b, c=t.c, d=t.d)
        delta = (t.u - t.l) % m
        if delta == 0:
            raise BadParams("Type 4 needs u != l (same block is Type 2)")
        if not (t.a < t.c and t.b > t.d):
            raise BadParams("Type 4 needs a < c and b > d")
        if (t.a + t.b * (1 << delta) - t.c - t.d * (1 << delta)) % F.q1:
            raise BadParams("Type 4 needs a 2^l + b 2^u = c 2^l + d 2^u")
        if delta > e_ac(r):
            warnings.warn(f"Type 4 offset {delta} exceeds floor(log2(r+1)) = {e_ac(r)}",
                          stacklevel=2)
        _block(M, r, t.u, t.b, t.l, t.a, 1)
        _block(M, r, t.u, t.d, t.l, t.c, 1)
    elif tag == 5:
        if gamma is None:
            raise BadParams("Type 5 needs the Goppa polynomial")
        gamma = [int(g) for g in gamma]
        if len(gamma) != r + 1:
            raise BadParams(f"Goppa polynomial must have degree r = {r}")
        _check_range(r, m, l=t.l, u=t.u)
        delta = (t.u - t.l) % m
        if not 1 <= delta <= v_bound(r):
            raise BadParams(f"Type 5 needs 1 <= (u-l) mod m <= floor(log2 r) = {v_bound(r)}")
        unit = 1 << (delta - 1)
        if t.s is None or t.s % unit or not 0 <= t.s // unit <= 2 * r - 2:
            raise BadParams(f"Type 5 needs s = 2^{delta - 1} w with 0 <= w <= 2r-2")
        rows = type5_rows(r, delta, t.s)
        if any(not B for B in rows):
            raise BadParams("Type 5 needs every B_a nonempty")
        assign = t.assignment if t.assignment is not None else \
            type5_default_assignment(r, delta, t.s)
        for a in range(r + 1):
            spec = assign.get(a)
            if spec is None:
                raise BadParams(f"no row assigned to a={a}")
            weights = {int(spec): gamma[a]} if not isinstance(spec, dict) else \
                {int(b): int(w) for b, w in spec.items()}
            if any(b not in rows[a] for b in weights):
                raise BadParams(f"rows {sorted(weights)} not all in B_{a} = {rows[a]}")
            acc = 0
            for w in weights.values():
                acc ^= w
            if acc != gamma[a]:
                raise BadParams(f"weights for a={a} do not sum to gamma_{a}")
            for b, w in weights.items():
                c = a + t.s - (1 << delta) * b
                _block(M, r, t.u, b, t.l, c, F.frobenius(w, t.l))
    else:
        raise BadParams(f"unknown type tag {tag}")
    return M


def enumerate_types(r: int, m: int, tag: int, q1: int | None = None) -> list[TypeParams]:
    """All parameter sets of one tag (Type 4 limited to the e_AC offsets)."""
    q1 = (1 << m) - 1 if q1 is None else q1
    out: list[TypeParams] = []
    for l in range(m):
        if tag == 1:
            for a, b in combinations(range(r), 2):
                if (a + b) % 2 == 0 and r >= 3:
                    c = (a + b) // 2
                    if a < c < b:
                        out.append(TypeParams(1, l=l, a=a, b=b, c=c))
        elif tag == 2:
            if r >= 4:
                for a, c, d, b in combinations(range(r), 4):
                    if a + b == c + d:
                        out.append(TypeParams(2, l=l, a=a, b=b, c=c, d=d))
        elif tag == 3:
            for a, b in combinations(range(r), 2):
                out.append(TypeParams(3, l=l, a=a, b=b))
        elif tag == 4:
            for delta in range(1, min(e_ac(r), m - 1) + 1):
                u = (l + delta) % m
                p = 1 << delta
                for a, c in combinations(range(r), 2):
                    for d, b in combinations(range(r), 2):
                        if (a + b * p - c - d * p) % q1 == 0:
                            out.append(TypeParams(4, l=l, u=u, a=a, b=b, c=c, d=d))
        elif tag == 5:
            for delta in range(1, min(v_bound(r), m - 1) + 1):
                u = (l + delta) % m
                unit = 1 << (delta - 1)
                for w in range(2 * r - 1):
                    s = unit * w
                    if all(type5_rows(r, delta, s)):
                        try:
                            type5_default_assignment(r, delta, s)
                        except BadParams:
                            continue
                        out.append(TypeParams(5, l=l, u=u, s=s))
        else:
            raise BadParams(f"unknown type tag {tag}")
    return out


def rank2_family(F: GF2m, gamma, l: int = 0) -> list[np.ndarray]:
    """The four generators (two Type 3, two Type 5) of the r = 2 rank-2 family."""
    m = F.m
    u = (l + 1) % m
    return [
        make_type(F, TypeParams(3, l=l, a=0, b=1), 2),
        make_type(F, TypeParams(3, l=u, a=0, b=1), 2),
        make_type(F, TypeParams(5, l=l, u=u, s=0, assignment={0: 0, 1: 0, 2: 1}), 2, gamma),
        make_type(F, TypeParams(5, l=l, u=u, s=1, assignment={0: 0, 1: 1, 2: 1}), 2, gamma),
    ]
