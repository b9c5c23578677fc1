"""Key recovery for binary Goppa codes with a square-free polynomial of degree 2.

Two rank-2 elements B1, B2 of the matrix code of the Frobenius-shaped basis
H are found with the Pfaffian solver.  When both are supported on the same
pair of blocks of the secret canonical basis, their kernels meet in a space V
of dimension rm-4 and V + V^(2) S has dimension rm-2; its annihilator, mapped
through H, is a Frobenius image of GRS_2(x, y).  Block alignment is obtained
by trying the m Frobenius conjugates of B2.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from . import pfaffian as pf
from .codes import SupportMultiplier, alternant_code
from .errors import (BadParams, Exhausted, NoCleanCodeword, NotFound, NotGRS,
                     VerificationFailed)
from .goppa_repr import to_goppa_representation
from .gf2m import GF2m
from .relations import crel_cmat, frobenius_basis, frobenius_conjugate, shift_matrix


def is_over_f2(F: GF2m, C) -> bool:
    """Whether the F_{2^m}-span of the rows has a basis of binary vectors."""
    R = la.row_basis(F, C)
    return bool(np.all(R < 2))


@dataclass
class PairLog:
    """Bookkeeping for one (B1, conjugate of B2) pair."""

    shift: int
    dim_k1: int
    dim_k2: int
    dim_v: int
    dim_w: int | None = None
    dim_grs: int | None = None
    outcome: str = ""


@dataclass
class GRSRecovery:
    grs: np.ndarray
    H: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    shift: int
    K1: np.ndarray
    K2: np.ndarray
    V: np.ndarray
    W: np.ndarray
    log: list = field(default_factory=list)


def _kernel_pair_step(F: GF2m, K1: np.ndarray, B2: np.ndarray, H: np.ndarray, r: int,
                      m: int, shift: int, S: np.ndarray):
    C2 = frobenius_conjugate(F, B2, r, shift)
    K2 = la.right_kernel(F, C2)
    V = la.Subspace(F, K1).intersect(la.Subspace(F, K2)).basis
    entry = PairLog(shift, K1.shape[0], K2.shape[0], V.shape[0])
    if V.shape[0] != r * m - 4:
        entry.outcome = "not-aligned"
        return entry, None
    W = la.row_basis(F, np.vstack([V, la.mat_mul(F, F.frobenius(V, 1), S)]))
    entry.dim_w = W.shape[0]
    if W.shape[0] != r * m - 2:
        entry.outcome = "bad-closure"
        return entry, None
    grs = la.row_basis(F, la.mat_mul(F, la.right_kernel(F, W), H))
    entry.dim_grs = grs.shape[0]
    if grs.shape[0] != 2 or is_over_f2(F, grs):
        entry.outcome = "degenerate-grs"
        return entry, None
    entry.outcome = "ok"
    return entry, (grs, C2, K2, V, W)


def candidate_grs(F: GF2m, H: np.ndarray, mats: list[np.ndarray], r: int = 2, log=None):
    """Yield every 2-dim code obtainable from ordered pairs of rank-2 matrices."""
    m = F.m
    S = shift_matrix(r, m)
    for i, B1 in enumerate(mats):
        K1 = la.right_kernel(F, B1)
        for j, B2 in enumerate(mats):
            if j == i and len(mats) > 1:
                continue
            for p in range(m):
                entry, hit = _kernel_pair_step(F, K1, B2, H, r, m, p, S)
                if log is not None:
                    log.append(entry)
                if hit is not None:
                    grs, C2, K2, V, W = hit
                    yield GRSRecovery(grs, H, B1, C2, p, K1, K2, V, W)


def recover_grs(F: GF2m, public, rng: np.random.Generator, budget: int | None = None,
                solver_budget: int = 20, threads: int = 1, r: int = 2, log: list | None = None,
                accept=None) -> GRSRecovery:
    """A 2-dim GRS code equivalent to the secret one, from the public code alone.

    ``accept`` (optional) is called on each candidate and may reject it.
    """
    if r != 2:
        raise BadParams("the attack is implemented for r = 2 only")
    budget = 4 * F.m if budget is None else budget
    log = [] if log is None else log
    H = frobenius_basis(F, public, r, rng)
    code = crel_cmat(F, H)
    system = pf.presolve(F, pf.build_system(F, code))
    pool: list[np.ndarray] = []
    for it in range(budget):
        rec = {"iteration": it}
        log.append(rec)
        try:
            res = pf.find_rank2(F, code, rng, solver_budget, threads, system=system)
        except NotFound as exc:
            rec["solver"] = _attempt_summary(exc.attempts)
            rec["outcome"] = "solver-failed"
            continue
        rec["solver"] = _attempt_summary(res.attempts)
        new = [M for M in res.matrices if not any(_proportional(F, M, P) for P in pool)]
        pool.extend(new)
        rec["pool"] = len(pool)
        pairs: list[PairLog] = []
        rec["pairs"] = pairs
        for cand in candidate_grs(F, H, pool, r, pairs):
            if accept is None or accept(cand):
                cand.log = log
                rec["outcome"] = "ok"
                return cand
        rec["outcome"] = "no-aligned-pair"
    raise Exhausted(f"no GRS code recovered in {budget} iterations")


def _proportional(F: GF2m, A: np.ndarray, B: np.ndarray) -> bool:
    return la.rank(F, np.vstack([A.ravel(), B.ravel()])) < 2


def _attempt_summary(attempts) -> list[dict]:
    return [{"index": a.index, "outcome": a.outcome, "solutions": a.solutions,
             "ranks": list(a.ranks), "trivial": a.trivial,
             "steps": [[s.nvars, s.degree, s.kernel, s.linear] for s in a.steps],
             "seconds": round(a.seconds, 3)} for a in attempts]


def support_recovery_dim2(F: GF2m, grs) -> SupportMultiplier:
    """Support and multiplier of a 2-dim GRS code.

    Codewords are scanned in a fixed order (both basis rows, then g0 + t g1
    for t = 1..q-1); every coordinate kills exactly one projective codeword,
    so a codeword without zeros exists as soon as n <= q.
    """
    G = la.row_basis(F, grs)
    if G.shape[0] != 2:
        raise NotGRS(f"code has dimension {G.shape[0]}, expected 2")
    if is_over_f2(F, G):
        raise NotGRS("code is defined over F_2")
    g0, g1 = G
    cands = [(g0, g1), (g1, g0)] + [(g0 ^ F.mul(t, g1), g1) for t in range(1, F.order)]
    for c1, c2 in cands:
        if np.all(c1 != 0):
            x = F.div(c2, c1)
            if np.unique(x).size != x.size:
                raise NotGRS("recovered support has repeated entries")
            sm = SupportMultiplier(x, c1)
            if not la.row_space_equal(F, np.vstack([c1, F.mul(x, c1)]), G):
                raise NotGRS("reconstructed span differs from the input")
            return sm
    raise NoCleanCodeword("every codeword has a zero coordinate")


def verify_pair(F: GF2m, sm: SupportMultiplier, public, r: int) -> bool:
    try:
        alt = alternant_code(F, sm, r)
    except Exception:
        return False
    return la.row_space_equal_f2(alt, public)


@dataclass
class AttackTranscript:
    seed: int | None
    m: int
    n: int
    r: int
    success: bool = False
    iterations: list = field(default_factory=list)
    shift: int | None = None
    dims: dict = field(default_factory=dict)
    x: list | None = None
    y: list | None = None
    gamma: list | None = None
    repr_draws: int | None = None
    timings: dict = field(default_factory=dict)
    error: str | None = None
    grs: np.ndarray | None = field(default=None, repr=False)


def full_attack(F: GF2m, public, rng: np.random.Generator, budget: int | None = None,
                solver_budget: int = 20, threads: int = 1, repr_budget: int | None = None,
                seed: int | None = None) -> AttackTranscript:
    public = la.as_bin(public)
    tr = AttackTranscript(seed, F.m, public.shape[1], 2)
    rngs = [np.random.default_rng(s) for s in
            np.random.SeedSequence(int(rng.integers(0, 2**63))).spawn(2)]
    t0 = time.perf_counter()
    found: dict = {}

    def accept(cand: GRSRecovery) -> bool:
        try:
            sm = support_recovery_dim2(F, cand.grs)
        except (NotGRS, NoCleanCodeword):
            return False
        if not verify_pair(F, sm, public, 2):
            return False
        found["sm"] = sm
        return True

    try:
        rec = recover_grs(F, public, rngs[0], budget, solver_budget, threads,
                          log=tr.iterations, accept=accept)
    except Exhausted as exc:
        tr.error = f"Exhausted: {exc}"
        tr.timings["recover_grs"] = time.perf_counter() - t0
        raise_later = exc
    else:
        raise_later = None
        tr.timings["recover_grs"] = time.perf_counter() - t0
        tr.shift = rec.shift
        tr.grs = rec.grs
        tr.dims = {"k1": rec.K1.shape[0], "k2": rec.K2.shape[0], "v": rec.V.shape[0],
                   "w": rec.W.shape[0], "grs": rec.grs.shape[0]}
    if raise_later is not None:
        raise_later.transcript = tr
        raise raise_later
    sm = found["sm"]
    t1 = time.perf_counter()
    if not verify_pair(F, sm, public, 2):
        raise VerificationFailed("recovered pair does not regenerate the public code")
    rep = to_goppa_representation(F, sm, 2, rngs[1], repr_budget)
    if not verify_pair(F, rep.sm, public, 2):
        raise VerificationFailed("Goppa representation does not regenerate the public code")
    tr.timings["representation"] = time.perf_counter() - t1
    tr.timings["total"] = time.perf_counter() - t0
    tr.x = [int(v) for v in rep.sm.x]
    tr.y = [int(v) for v in rep.sm.y]
    tr.gamma = [int(v) for v in rep.gamma]
    tr.repr_draws = rep.draws
    tr.success = True
    return tr
