"""Small-parameter invariant suite behind ``quadrel selftest``."""

from __future__ import annotations

import itertools
from math import comb

import numpy as np

from . import linalg as la
from . import pfaffian as pf
from . import relations as rel
from .codes import (SupportMultiplier, canonical_basis, dual_multiplier, goppa_square_identity,
                    grs_generator, keygen)
from .gf2m import GF2m
from .goppa_repr import MobiusParams, mobius_apply, to_goppa_representation


def det4_leibniz(F: GF2m, M) -> int:
    """4x4 determinant by the permutation expansion (signs vanish in char 2)."""
    acc = 0
    for p in itertools.permutations(range(4)):
        t = 1
        for i in range(4):
            t = F.mul(t, int(M[i, p[i]]))
        acc ^= t
    return acc


def random_skew(F: GF2m, k: int, rng) -> np.ndarray:
    M = np.triu(F.random(rng, size=(k, k)), 1)
    return M ^ M.T


def planted_skew(F: GF2m, k: int, rank: int, rng) -> np.ndarray:
    """Sum of rank/2 random u v^T + v u^T terms (rank at most ``rank``)."""
    M = np.zeros((k, k), dtype=np.int64)
    for _ in range(rank // 2):
        u, v = F.random(rng, size=k), F.random(rng, size=k)
        P = F.mul(u[:, None], v[None, :])
        M ^= P ^ P.T
    return M


def random_binary_code(k: int, n: int, rng) -> np.ndarray:
    while True:
        G = rng.integers(0, 2, size=(k, n)).astype(np.uint8)
        if la.rank_f2(G) == k:
            return G


def _check(name, fn, results):
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure of that property
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    results.append((name, bool(ok), detail))


def run_selftest(seed: int = 0, inject_fault: bool = False) -> list[tuple[str, bool, str]]:
    rng = np.random.default_rng(seed)
    results: list[tuple[str, bool, str]] = []
    F5 = GF2m(5)

    def field():
        a = F5.elements()[1:]
        return bool(np.all(F5.mul(a, F5.inv(a)) == 1)), ""

    def duality():
        x = rng.permutation(32)[:20]
        sm = SupportMultiplier(x, F5.random(rng, size=20, nonzero=True))
        G = grs_generator(F5, sm, 4)
        Gd = grs_generator(F5, SupportMultiplier(x, dual_multiplier(F5, sm)), 16)
        return not la.mat_mul(F5, G, la.transpose(Gd)).any(), ""

    keys = [keygen(5, 32, 2, rng) for _ in range(3)]

    def square_free():
        return all(goppa_square_identity(k.F, k.x, k.gamma) for k in keys), f"{len(keys)} keys"

    def canonical_span():
        k = keys[0]
        A = canonical_basis(k.F, k.sm, 2)
        ext = la.extend_scalars(la.binary_dual(k.public))
        return la.row_space_equal(k.F, A, ext), ""

    def cmat_dim():
        bad = 0
        for k in keys:
            H = rel.frobenius_basis(k.F, k.public, 2, rng)
            q = rel.crel_cmat(k.F, H)
            bad += q.dim != comb(11, 2) - la.schur_span(k.F, H).dim
        G = random_binary_code(20, 32, rng)
        H = rel.frobenius_basis(F5, G, 2, rng)
        q = rel.crel_cmat(F5, H)
        bad += q.dim != comb(11, 2) - la.schur_span(F5, H).dim
        return bad == 0, f"{len(keys) + 1} instances"

    def catalog():
        count, pending = 0, inject_fault
        for m, n, r in ((4, 16, 3), (6, 64, 4)):
            k = keygen(m, n, r, rng)
            A = canonical_basis(k.F, k.sm, r)
            expect = {1: 2, 2: 4, 3: 2, 4: 4}
            for tag in range(1, 6):
                for t in rel.enumerate_types(r, m, tag):
                    M = rel.make_type(k.F, t, r, k.gamma)
                    if pending and tag == 3:
                        M[0, -1] ^= 1
                        M[-1, 0] ^= 1
                        pending = False
                    count += 1
                    if not rel.membership_check(k.F, M, A):
                        return False, f"type {tag} {t.describe()} is not a relation"
                    rk = la.rank(k.F, M)
                    if tag in expect and rk != expect[tag]:
                        return False, f"type {tag} {t.describe()} has rank {rk}"
        return True, f"{count} matrices"

    def negative_control():
        k = keys[0]
        A = canonical_basis(k.F, k.sm, 2)
        M = rel.make_type(k.F, rel.TypeParams(3, l=0, a=0, b=1), 2)
        M[0, 2] ^= 1
        M[2, 0] ^= 1
        return not rel.membership_check(k.F, M, A), "corrupted matrix rejected"

    def pfaffians():
        for _ in range(100):
            M = random_skew(F5, 4, rng)
            p = pf.pfaffian4(F5, M, 1, 2, 3, 4)
            if F5.mul(p, p) != det4_leibniz(F5, M):
                return False, "det differs from pfaffian squared"
        for rank in (0, 2, 4, 6):
            for _ in range(5):
                M = planted_skew(F5, 8, rank, rng)
                low = la.rank(F5, M) <= 2
                if low != (not pf.all_pfaffians(F5, M).any()):
                    return False, f"planted rank {rank}"
        return True, ""

    def frobenius_closure():
        k = keys[1]
        H = rel.frobenius_basis(k.F, k.public, 2, rng)
        q = rel.crel_cmat(k.F, H)
        ok = all(rel.membership_check(k.F, rel.frobenius_conjugate(k.F, M, 2), H) for M in q.mats)
        return ok, f"{q.dim} matrices"

    def congruence():
        k = keys[1]
        A = canonical_basis(k.F, k.sm, 2)
        H = rel.frobenius_basis(k.F, k.public, 2, rng)
        P = rel.change_of_basis(k.F, H, A)
        return rel.congruence_check(k.F, rel.crel_cmat(k.F, A), rel.crel_cmat(k.F, H), P), ""

    def rank2_family():
        k = keys[2]
        g0, g1, g2 = k.gamma
        mats = rel.rank2_family(k.F, k.gamma)
        F = k.F
        for _ in range(300):
            lam = F.random(rng, size=4)
            M = np.zeros_like(mats[0])
            for c, B in zip(lam, mats):
                M ^= F.mul(int(c), B)
            l1, l2, l3, l4 = (int(v) for v in lam)
            val = (F.mul(l1, l2) ^ F.mul(F.mul(l3, l3), F.mul(g1, g2))
                   ^ F.mul(F.mul(l3, l4), F.mul(g1, g1)) ^ F.mul(F.mul(l4, l4), F.mul(g0, g1)))
            if M.any() and (la.rank(F, M) == 2) != (val == 0):
                return False, f"lambda={lam.tolist()}"
        return True, "300 samples"

    def white_box_attack():
        from .attack import full_attack
        k = keys[0]
        tr = full_attack(k.F, k.public, rng)
        A = canonical_basis(k.F, k.sm, 2)
        block = any(la.row_space_equal(k.F, tr.grs, A[2 * l:2 * l + 2]) for l in range(5))
        dims = tr.dims == {"k1": 8, "k2": 8, "v": 6, "w": 8, "grs": 2}
        return tr.success and block and dims, f"dims={tr.dims}"

    def representation():
        k = keygen(5, 24, 2, rng)
        sm = k.sm
        while True:
            a, b, d = (F5.random(rng) for _ in range(3))
            p = MobiusParams(a, b, 1, d, F5.random(rng, nonzero=True))
            if p.det(F5) and not np.any(sm.x == d):
                break
        scr = mobius_apply(F5, sm, p, 2)
        res = to_goppa_representation(F5, scr, 2, rng)
        ok = np.array_equal(F5.inv(F5.poly_eval(res.gamma, res.sm.x)), res.sm.y)
        return ok and len(res.gamma) == 3, f"draws={res.draws}"

    for name, fn in [("field-inverse", field), ("grs-duality", duality),
                     ("square-free-identity", square_free), ("canonical-span", canonical_span),
                     ("cmat-dimension", cmat_dim), ("catalog", catalog),
                     ("catalog-negative-control", negative_control),
                     ("pfaffian-identities", pfaffians), ("frobenius-closure", frobenius_closure),
                     ("congruence", congruence), ("rank2-family", rank2_family),
                     ("white-box-attack", white_box_attack), ("representation", representation)]:
        _check(name, fn, results)
    return results
