"""Rank-2 elements of a matrix code via the 4x4 Pfaffian system.

A skew matrix over a field of characteristic 2 has rank at most 2 exactly when
every 4x4 principal Pfaffian m_ij m_kl + m_ik m_jl + m_il m_jk vanishes.
Writing M = sum_t lam_t B_t over a basis of the code turns these into
quadrics in lam.

Systems are stored densely: each form is lam^T Q lam + L lam + c with Q upper
triangular (its diagonal holds the square coefficients), and the current
variables mu are tied to the original coordinates through lam = T mu + t0.

The solver works degree by degree on Macaulay matrices whose columns are
ordered so that the last rows of the echelon form only involve linear
monomials, squares and the constant.  In characteristic 2 a row
sum c_a x_a^2 + c0 is the square of sum sqrt(c_a) x_a + sqrt(c0), so such
rows give linear equations as well.  Linear equations are substituted and
the search restarts; once the kernel dimension stops growing the solutions
are read off multiplication matrices.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import linalg as la
from .errors import (BadIndices, BadParams, ConflictingAssignment, Inconsistent,
                     NotFound, SingularMatrix, TooManySolutions)
from .gf2m import GF2m
from .relations import QuadRelCode, membership_check

DEFAULT_MAX_COLS = 6000
DEFAULT_MAX_DEGREE = 6


# ---------------------------------------------------------------------------
# Pfaffians


def pfaffian4(F: GF2m, M, i: int, j: int, k: int, l: int) -> int:
    """Pfaffian of the principal 4x4 submatrix on rows i<j<k<l (1-based)."""
    M = np.asarray(M)
    if not 1 <= i < j < k < l <= M.shape[0]:
        raise BadIndices(f"need 1 <= i < j < k < l <= {M.shape[0]}, got {(i, j, k, l)}")
    i, j, k, l = i - 1, j - 1, k - 1, l - 1
    return (F.mul(int(M[i, j]), int(M[k, l])) ^ F.mul(int(M[i, k]), int(M[j, l]))
            ^ F.mul(int(M[i, l]), int(M[j, k])))


def all_pfaffians(F: GF2m, M) -> np.ndarray:
    """pfaffian4 on every quadruple, in lexicographic order."""
    M = np.asarray(M, dtype=np.int64)
    q = np.array(list(itertools.combinations(range(M.shape[0]), 4)), dtype=np.int64)
    if q.size == 0:
        return np.zeros(0, dtype=np.int64)
    a, b, c, d = q.T
    return (F.mul(M[a, b], M[c, d]) ^ F.mul(M[a, c], M[b, d]) ^ F.mul(M[a, d], M[b, c]))


# ---------------------------------------------------------------------------
# systems


@dataclass(frozen=True)
class PfaffianSystem:
    """Quadrics lam^T Q lam + L lam + c in variables mu, with lam = T mu + t0."""

    Q: np.ndarray = field(repr=False)
    L: np.ndarray = field(repr=False)
    c: np.ndarray = field(repr=False)
    T: np.ndarray = field(repr=False)
    t0: np.ndarray = field(repr=False)
    specialization: dict = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        return self.T.shape[1]

    @property
    def D(self) -> int:
        return self.T.shape[0]

    @property
    def nforms(self) -> int:
        return self.Q.shape[0]

    def forms(self) -> list[dict]:
        """Forms as sparse maps {(i, j): c, (i,): c, (): c} without zeros."""
        out = []
        iu, ju = np.triu_indices(self.nvars)
        for e in range(self.nforms):
            f = {}
            for a, b in zip(iu, ju):
                if self.Q[e, a, b]:
                    f[(int(a), int(b))] = int(self.Q[e, a, b])
            for a in np.flatnonzero(self.L[e]):
                f[(int(a),)] = int(self.L[e, a])
            if self.c[e]:
                f[()] = int(self.c[e])
            out.append(f)
        return out

    def evaluate(self, F: GF2m, mu) -> np.ndarray:
        """Values of all forms at mu."""
        mu = np.asarray(mu, dtype=np.int64)
        Qm = _matmul_stack(F, self.Q, mu)
        return _dot_rows(F, Qm, mu) ^ la.mat_vec(F, self.L, mu) ^ self.c \
            if self.nvars else self.c.copy()

    def lift(self, F: GF2m, mu) -> np.ndarray:
        """Original coordinates lam = T mu + t0."""
        mu = np.asarray(mu, dtype=np.int64)
        if self.nvars == 0:
            return self.t0.copy()
        return la.mat_vec(F, self.T, mu) ^ self.t0


def _matmul_stack(F: GF2m, Q: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Q[e] @ v for every e."""
    E, V, _ = Q.shape
    if E == 0 or V == 0:
        return np.zeros((E, V), dtype=np.int64)
    return la.mat_vec(F, Q.reshape(E * V, V), v).reshape(E, V)


def _dot_rows(F: GF2m, A: np.ndarray, v: np.ndarray) -> np.ndarray:
    if A.shape[1] == 0:
        return np.zeros(A.shape[0], dtype=np.int64)
    return la.mat_vec(F, A, v)


def upper_fold(G: np.ndarray) -> np.ndarray:
    """Upper-triangular matrix with the same quadratic form as G."""
    U = np.triu(G ^ np.swapaxes(G, -1, -2), 1)
    idx = np.arange(G.shape[-1])
    U[..., idx, idx] = G[..., idx, idx]
    return U


def build_system(F: GF2m, code: QuadRelCode) -> PfaffianSystem:
    mats = code.mats
    D, k, _ = mats.shape
    if D < 1:
        raise BadParams("matrix code must have dimension >= 1")
    quads = np.array(list(itertools.combinations(range(k), 4)), dtype=np.int64).reshape(-1, 4)
    E = quads.shape[0]
    Q = np.zeros((E, D, D), dtype=np.int64)
    for (p, q), (s, t) in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        a = mats[:, quads[:, p], quads[:, q]].T
        b = mats[:, quads[:, s], quads[:, t]].T
        Q ^= F.mul(a[:, :, None], b[:, None, :])
    return PfaffianSystem(upper_fold(Q), np.zeros((E, D), dtype=np.int64),
                          np.zeros(E, dtype=np.int64), np.eye(D, dtype=np.int64),
                          np.zeros(D, dtype=np.int64))


def substitute(F: GF2m, sys: PfaffianSystem, T: np.ndarray, t0: np.ndarray,
               extra: dict | None = None) -> PfaffianSystem:
    """Replace mu by T nu + t0 (T of shape nvars x new_nvars)."""
    T = np.asarray(T, dtype=np.int64).reshape(sys.nvars, -1)
    t0 = np.asarray(t0, dtype=np.int64)
    E, V = sys.nforms, sys.nvars
    W = T.shape[1]
    Q, L, c = sys.Q, sys.L, sys.c
    if W:
        X = la.mat_mul(F, la.transpose(T), Q.transpose(1, 0, 2).reshape(V, E * V))
        X = X.reshape(W, E, V).transpose(1, 0, 2).reshape(E * W, V)
        Qn = upper_fold(la.mat_mul(F, X, T).reshape(E, W, W))
    else:
        Qn = np.zeros((E, 0, 0), dtype=np.int64)
    Qt = _matmul_stack(F, Q, t0)
    sym = Qt ^ _matmul_stack(F, np.ascontiguousarray(np.swapaxes(Q, 1, 2)), t0)
    Ln = la.mat_mul(F, sym ^ L, T) if W else np.zeros((E, 0), dtype=np.int64)
    cn = c ^ _dot_rows(F, Qt, t0) ^ _dot_rows(F, L, t0)
    Tn = la.mat_mul(F, sys.T, T) if W else np.zeros((sys.D, 0), dtype=np.int64)
    t0n = la.mat_vec(F, sys.T, t0) ^ sys.t0 if V else sys.t0.copy()
    spec = dict(sys.specialization)
    if extra:
        spec.update(extra)
    return PfaffianSystem(Qn, Ln, cn, Tn, t0n, spec)


def specialize(F: GF2m, sys: PfaffianSystem, assignment) -> PfaffianSystem:
    """Fix some current variables; assignment is a mapping or (index, value) pairs."""
    pairs = list(assignment.items()) if isinstance(assignment, dict) else list(assignment)
    fixed: dict[int, int] = {}
    for i, v in pairs:
        i, v = int(i), int(v)
        if not 0 <= i < sys.nvars:
            raise BadIndices(f"variable {i} outside [0, {sys.nvars - 1}]")
        if not 0 <= v < F.order:
            raise BadParams(f"value {v} is not a field element")
        if fixed.get(i, v) != v:
            raise ConflictingAssignment(f"variable {i} assigned both {fixed[i]} and {v}")
        fixed[i] = v
    if not fixed:
        return sys
    keep = [j for j in range(sys.nvars) if j not in fixed]
    T = np.zeros((sys.nvars, len(keep)), dtype=np.int64)
    T[keep, np.arange(len(keep))] = 1
    t0 = np.zeros(sys.nvars, dtype=np.int64)
    for i, v in fixed.items():
        t0[i] = v
    # record the assignment in the original coordinates when it is a plain one
    extra = {}
    for i, v in fixed.items():
        col = sys.T[:, i]
        if np.count_nonzero(col) == 1 and col[np.flatnonzero(col)[0]] == 1:
            extra[int(np.flatnonzero(col)[0])] = v
    return substitute(F, sys, T, t0, extra)


def substitute_linear(F: GF2m, sys: PfaffianSystem, eqs: np.ndarray) -> PfaffianSystem:
    """Impose linear equations eqs @ [mu; 1] = 0 by eliminating pivot variables."""
    V = sys.nvars
    eqs = la.as_ext(eqs).reshape(-1, V + 1)
    R, piv = la.rref_pivots(F, eqs)
    if V in piv:
        raise Inconsistent("linear equations are contradictory")
    free = [j for j in range(V) if j not in piv]
    T = np.zeros((V, len(free)), dtype=np.int64)
    T[free, np.arange(len(free))] = 1
    t0 = np.zeros(V, dtype=np.int64)
    for i, p in enumerate(piv):
        # x_p + sum_f R[i, f] x_f + R[i, V] = 0, signs vanish in char 2
        T[p] = R[i, free]
        t0[p] = R[i, V]
    return substitute(F, sys, T, t0)


# ---------------------------------------------------------------------------
# monomial bookkeeping


@dataclass(frozen=True)
class MonomialSpace:
    """Monomials of degree <= d in V variables (sorted index tuples)."""

    V: int
    d: int
    mons: tuple
    deg: np.ndarray
    mul: np.ndarray     # mul[i, v] = index of mons[i] * x_v, or -1
    square: np.ndarray  # whether every exponent is even
    root: np.ndarray    # index of the square root (squares only), else -1

    @property
    def size(self) -> int:
        return len(self.mons)

    def index(self, mon) -> int:
        return _index_map(self.V, self.d)[tuple(sorted(mon))]


@lru_cache(maxsize=32)
def _index_map(V: int, d: int) -> dict:
    return {mn: i for i, mn in enumerate(monomial_space(V, d).mons)}


def monomial_count(V: int, d: int) -> int:
    from math import comb
    return comb(V + d, d)


@lru_cache(maxsize=32)
def monomial_space(V: int, d: int) -> MonomialSpace:
    mons = []
    for e in range(d + 1):
        mons.extend(itertools.combinations_with_replacement(range(V), e))
    idx = {mn: i for i, mn in enumerate(mons)}
    N = len(mons)
    deg = np.fromiter((len(mn) for mn in mons), dtype=np.int64, count=N)
    mul = np.full((N, V), -1, dtype=np.int64)
    square = np.zeros(N, dtype=bool)
    root = np.full(N, -1, dtype=np.int64)
    for i, mn in enumerate(mons):
        if len(mn) < d:
            for v in range(V):
                mul[i, v] = idx[tuple(sorted(mn + (v,)))]
        if all(len(list(g)) % 2 == 0 for _, g in itertools.groupby(mn)):
            square[i] = True
            root[i] = idx[mn[::2]]
    for a in (deg, mul, square, root):
        a.setflags(write=False)
    return MonomialSpace(V, d, tuple(mons), deg, mul, square, root)


def linearize(sys: PfaffianSystem) -> np.ndarray:
    """Coefficient rows of the forms over monomial_space(nvars, 2)."""
    V = sys.nvars
    sp = monomial_space(V, 2)
    out = np.zeros((sys.nforms, sp.size), dtype=np.int64)
    out[:, 0] = sys.c
    out[:, 1:V + 1] = sys.L
    iu, ju = np.triu_indices(V)
    out[:, V + 1:] = sys.Q[:, iu, ju]
    return out


def delinearize(rows: np.ndarray, V: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    E = rows.shape[0]
    Q = np.zeros((E, V, V), dtype=np.int64)
    iu, ju = np.triu_indices(V)
    Q[:, iu, ju] = rows[:, V + 1:]
    return Q, rows[:, 1:V + 1].copy(), rows[:, 0].copy()


def reduce_forms(F: GF2m, sys: PfaffianSystem) -> PfaffianSystem:
    """Replace the forms by an echelon basis of their span (zero forms dropped)."""
    rows = linearize(sys)
    basis = la.row_basis(F, rows) if rows.shape[0] else rows
    Q, L, c = delinearize(basis, sys.nvars)
    return replace(sys, Q=Q, L=L, c=c)


def macaulay(F: GF2m, sys: PfaffianSystem, d: int) -> tuple[np.ndarray, MonomialSpace]:
    """Rows mu^e * f for every form f and monomial mu^e with deg <= d - deg f."""
    V = sys.nvars
    sp2 = monomial_space(V, 2)
    spd = monomial_space(V, d)
    rows2 = linearize(sys)
    rows2 = rows2[np.any(rows2, axis=1)]
    embed = np.fromiter((spd.index(mn) for mn in sp2.mons), dtype=np.int64, count=sp2.size) \
        if d >= 2 else None
    pdeg = np.array([sp2.deg[np.flatnonzero(r)].max() for r in rows2], dtype=np.int64)
    blocks = []
    for e in range(0, d + 1):
        sel = np.flatnonzero(pdeg + e <= d)
        if sel.size == 0:
            continue
        top = int(pdeg[sel].max())
        cols = np.flatnonzero(sp2.deg <= top)
        P = rows2[np.ix_(sel, cols)]
        for mn in itertools.combinations_with_replacement(range(V), e):
            cmap = embed[cols]
            for v in mn:
                cmap = spd.mul[cmap, v]
            B = np.zeros((sel.size, spd.size), dtype=np.int64)
            B[:, cmap] = P
            blocks.append(B)
    M = np.vstack(blocks) if blocks else np.zeros((0, spd.size), dtype=np.int64)
    return M, spd


def _harvest_order(sp: MonomialSpace) -> np.ndarray:
    """Non-squares by decreasing degree, then squares by decreasing degree.

    The linear monomials are the last non-squares and the constant is last.
    """
    key = np.where(sp.square, 1, 0) * (sp.d + 1) + (sp.d - sp.deg)
    return np.lexsort((np.arange(sp.size), key))


@dataclass
class DegreeStep:
    nvars: int
    degree: int
    rows: int
    cols: int
    kernel: int
    linear: int


def _harvest(F: GF2m, R: np.ndarray, piv: list[int], order: np.ndarray,
             sp: MonomialSpace) -> np.ndarray:
    """Linear equations (rows over [x_0..x_{V-1}, 1]) read off an echelon form."""
    V = sp.V
    deg = sp.deg[order]
    sq = sp.square[order]
    root = sp.root[order]
    first_lin = int(np.count_nonzero(~sp.square & (sp.deg >= 2)))
    eqs = []
    for i, p in enumerate(piv):
        if sq[p] and deg[p] == 0:
            raise Inconsistent("the constant lies in the ideal")
        if p < first_lin:
            continue
        nz = np.flatnonzero(R[i])
        if np.all(sq[nz]):
            rdeg = sp.deg[root[nz]]
            if np.any(rdeg > 1):
                continue
            row = np.zeros(V + 1, dtype=np.int64)
            for j in nz:
                r_ = root[j]
                pos = V if sp.deg[r_] == 0 else int(sp.mons[r_][0])
                row[pos] ^= F.sqrt(int(R[i, j]))
            eqs.append(row)
        elif np.all((deg[nz] == 1) | (deg[nz] == 0)):
            row = np.zeros(V + 1, dtype=np.int64)
            for j in nz:
                mn = sp.mons[order[j]]
                row[V if not mn else mn[0]] ^= int(R[i, j])
            eqs.append(row)
    return np.array(eqs, dtype=np.int64).reshape(-1, V + 1)


def _joint_points(F: GF2m, mults: list[np.ndarray]) -> list[np.ndarray]:
    """Common left eigenvectors of commuting matrices, as eigenvalue tuples."""
    K = mults[0].shape[0] if mults else 0
    out: list[np.ndarray] = []
    elems = F.elements()

    def split(W: np.ndarray, v: int, coords: list[int]):
        if v == len(mults):
            out.append(np.array(coords, dtype=np.int64))
            return
        # W M_v = C W: C is the action of M_v on the invariant subspace W
        WM = la.mat_mul(F, W, mults[v])
        C = la.transpose(la.solve(F, la.transpose(W), la.transpose(WM)))
        k = W.shape[0]
        for e in elems:
            Ce = C.copy()
            Ce[np.arange(k), np.arange(k)] ^= e
            Z = la.left_kernel(F, Ce)
            if Z.shape[0]:
                split(la.mat_mul(F, Z, W), v + 1, coords + [int(e)])

    if K:
        split(np.eye(K, dtype=np.int64), 0, [])
    return out


def _extract(F: GF2m, R: np.ndarray, piv: list[int], order: np.ndarray,
             sp: MonomialSpace) -> list[np.ndarray] | None:
    """Rational solutions from the kernel, or None when no flat truncation exists.

    The kernel restricted to degree <= t is used once its rank equals the
    rank at degree <= t-1; then multiplication by x_v stays inside degree t.
    """
    N = np.zeros((sp.size - len(piv), sp.size), dtype=np.int64)
    N[:, order] = la._kernel_from_rref(R, piv, sp.size)
    prev = None
    for t in range(0, sp.d):
        cols = np.flatnonzero(sp.deg <= t)
        Nt, tpiv = la.rref_pivots(F, N[:, cols])
        if prev is not None and len(tpiv) == len(prev[1]) and len(tpiv):
            K = len(tpiv)
            Nt = Nt[:K]
            B = cols[prev[1]]
            pos = np.full(sp.size, -1, dtype=np.int64)
            pos[cols] = np.arange(cols.size)
            try:
                A0inv = la.inverse(F, Nt[:, pos[B]])
                mults = [la.mat_mul(F, A0inv, Nt[:, pos[sp.mul[B, v]]]) for v in range(sp.V)]
                return _joint_points(F, mults)
            except SingularMatrix:
                return None
        prev = (cols, tpiv)
    return None


def solve_linearized(F: GF2m, sys: PfaffianSystem, max_degree: int = DEFAULT_MAX_DEGREE,
                     max_cols: int = DEFAULT_MAX_COLS,
                     log: list | None = None) -> list[np.ndarray]:
    """All solutions over the field of a specialized system, as lam vectors.

    Raises Inconsistent when the system has no solution at all and
    TooManySolutions when no zero-dimensional description is reached within
    max_degree (or the column budget).
    """
    if max_degree < 2:
        raise BadParams("max_degree must be at least 2")
    sys = reduce_forms(F, sys)
    d, prev = 2, None
    while True:
        V = sys.nvars
        if sys.nforms == 0:
            if V == 0:
                return [sys.lift(F, np.zeros(0, dtype=np.int64))]
            raise TooManySolutions(f"{V} free variables and no equations")
        if monomial_count(V, d) > max_cols:
            raise TooManySolutions(f"{monomial_count(V, d)} monomials exceed the budget")
        M, sp = macaulay(F, sys, d)
        order = _harvest_order(sp)
        R, piv = la.rref_pivots(F, M[:, order])
        kernel = sp.size - len(piv)
        eqs = _harvest(F, R, piv, order, sp)
        if log is not None:
            log.append(DegreeStep(V, d, M.shape[0], M.shape[1], kernel, eqs.shape[0]))
        if eqs.shape[0]:
            sys = reduce_forms(F, substitute_linear(F, sys, eqs))
            d, prev = 2, None
            continue
        if prev is None:
            prev = V + 1
        if kernel <= prev:
            pts = _extract(F, R, piv, order, sp)
            if pts is not None:
                sols = []
                for mu in pts:
                    if not np.any(sys.evaluate(F, mu)):
                        sols.append(sys.lift(F, mu))
                if not sols:
                    raise Inconsistent("no solution over the field")
                return sols
        prev = kernel
        d += 1
        if d > max_degree:
            raise TooManySolutions(f"no flat kernel up to degree {max_degree}")


def presolve(F: GF2m, sys: PfaffianSystem, max_cols: int = DEFAULT_MAX_COLS) -> PfaffianSystem:
    """Substitute the linear consequences visible at degree 2."""
    while sys.nvars and sys.nforms and monomial_count(sys.nvars, 2) <= max_cols:
        M, sp = macaulay(F, sys, 2)
        order = _harvest_order(sp)
        R, piv = la.rref_pivots(F, M[:, order])
        eqs = _harvest(F, R, piv, order, sp)
        if not eqs.shape[0]:
            break
        sys = reduce_forms(F, substitute_linear(F, sys, eqs))
    return sys


# ---------------------------------------------------------------------------
# search


@dataclass
class Attempt:
    index: int
    fixed: tuple
    outcome: str
    solutions: int = 0
    ranks: tuple = ()
    trivial: int = 0
    steps: list = field(default_factory=list)
    seconds: float = 0.0


@dataclass
class Rank2Result:
    """The first verified matrix, plus every verified one of the same attempt."""

    matrix: np.ndarray
    lam: np.ndarray
    attempts: list
    matrices: list


def default_assignment(sys: PfaffianSystem, rng: np.random.Generator, F: GF2m,
                       count: int = 3) -> list[tuple[int, int]]:
    """One variable set to 1, the others to uniform random values."""
    count = min(count, sys.nvars)
    idx = rng.choice(sys.nvars, size=count, replace=False)
    vals = [1] + [F.random(rng) for _ in range(count - 1)]
    return [(int(i), int(v)) for i, v in zip(idx, vals)]


def is_degenerate_image(F: GF2m, M, H) -> bool:
    """Whether the code spanned by the u H, u in the row space of M, meets its
    own Frobenius image.

    This covers images with a binary basis and images containing a multiple of
    a binary vector; both occur in random codes.  A Frobenius image of
    GRS_2(x, 1/Gamma(x)) with Gamma irreducible and n >= 4 never does.
    """
    img = la.mat_mul(F, la.row_basis(F, M), H)
    return la.rank(F, np.vstack([img, F.frobenius(img, 1)])) < 2 * img.shape[0]


def _attempt(F: GF2m, code: QuadRelCode, base: PfaffianSystem, index: int,
             seed: np.random.SeedSequence, max_degree: int, max_cols: int,
             nontrivial: bool):
    t = time.perf_counter()
    rng = np.random.default_rng(seed)
    fixed = default_assignment(base, rng, F)
    att = Attempt(index, tuple(fixed), "none")
    found: list = []
    try:
        sols = solve_linearized(F, specialize(F, base, fixed), max_degree, max_cols, att.steps)
        att.solutions = len(sols)
        ranks = []
        for lam in sols:
            if not np.any(lam):
                continue
            M = code.combine(F, lam)
            rk = la.rank(F, M)
            ranks.append(rk)
            if rk == 2 and membership_check(F, M, code.H):
                if nontrivial and is_degenerate_image(F, M, code.H):
                    att.trivial += 1
                    continue
                found.append((M, lam))
        att.ranks = tuple(ranks)
        att.outcome = "found" if found else "no-rank-2"
    except Inconsistent:
        att.outcome = "inconsistent"
    except TooManySolutions:
        att.outcome = "too-many"
    att.seconds = time.perf_counter() - t
    return att, found


def find_rank2(F: GF2m, code: QuadRelCode, rng: np.random.Generator, budget: int = 20,
               threads: int = 1, max_degree: int = DEFAULT_MAX_DEGREE, max_cols: int = DEFAULT_MAX_COLS,
               system: PfaffianSystem | None = None, nontrivial: bool = True) -> Rank2Result:
    """First verified rank-2 element of the code over budget specializations.

    Attempt i draws its specialization from its own child seed, so the result
    does not depend on the number of threads.  With ``nontrivial`` (default),
    elements with a degenerate image (see is_degenerate_image) are skipped.
    """
    if budget < 1:
        raise BadParams("budget must be >= 1")
    if code.dim == 0:
        raise NotFound("the matrix code is zero")
    base = system if system is not None else presolve(F, build_system(F, code), max_cols)
    if base.nvars == 0:
        raise NotFound("the system only has the zero solution")
    seeds = np.random.SeedSequence(int(rng.integers(0, 2**63))).spawn(budget)
    attempts: list[Attempt] = []
    threads = max(1, int(threads))
    with ThreadPoolExecutor(threads) if threads > 1 else _Serial() as ex:
        for start in range(0, budget, threads):
            batch = range(start, min(budget, start + threads))
            results = list(ex.map(lambda i: _attempt(F, code, base, i, seeds[i],
                                                     max_degree, max_cols, nontrivial),
                                  batch))
            for att, found in results:
                attempts.append(att)
                if found:
                    return Rank2Result(found[0][0], found[0][1], attempts,
                                       [M for M, _ in found])
    raise NotFound(f"no rank-2 element after {budget} specializations", attempts)


class _Serial:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    @staticmethod
    def map(fn, it):
        return map(fn, it)
