"""Goppa representations of support/multiplier pairs.

A pair (x, y) of a degree-r alternant code is a Goppa representation when
y = 1/G(x) for a polynomial G of degree exactly r.  Fractional linear maps
x -> (ax + b)/(cx + d), y -> lam (cx + d)^(r-1) y keep the code unchanged; the
affine ones (c = 0) keep a representation a representation, so a generic pair
is converted by searching for a map that undoes the non-affine part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import SupportMultiplier
from .errors import BadParams, Exhausted, PoleHit
from .gf2m import GF2m, poly_degree

EXTRA_POINTS = 4


@dataclass(frozen=True)
class MobiusParams:
    a: int
    b: int
    c: int
    d: int
    lam: int = 1

    def det(self, F: GF2m) -> int:
        return F.mul(self.a, self.d) ^ F.mul(self.b, self.c)

    def check(self, F: GF2m) -> None:
        if self.det(F) == 0:
            raise BadParams("ad - bc must be nonzero")
        if self.lam == 0:
            raise BadParams("lambda must be nonzero")

    @property
    def affine(self) -> bool:
        return self.c == 0


def mobius_apply(F: GF2m, sm: SupportMultiplier, p: MobiusParams, r: int) -> SupportMultiplier:
    p.check(F)
    den = F.mul(p.c, sm.x) ^ p.d
    bad = np.flatnonzero(den == 0)
    if bad.size:
        raise PoleHit(int(bad[0]))
    x = F.div(F.mul(p.a, sm.x) ^ p.b, den)
    y = F.mul(F.mul(p.lam, F.pow(den, r - 1)), sm.y)
    return SupportMultiplier(x, y)


def mobius_inverse(F: GF2m, p: MobiusParams, r: int) -> MobiusParams:
    """Parameters undoing ``p`` on both the support and the multiplier."""
    p.check(F)
    # c x' + a = det / (c x + d), so the multiplier picks up det^(r-1)
    lam = F.inv(F.mul(p.lam, F.pow(p.det(F), r - 1)))
    return MobiusParams(p.d, p.b, p.c, p.a, lam)


def representation_status(F: GF2m, sm: SupportMultiplier, r: int) -> tuple[str, list | None]:
    """("ok", G), ("not-minimal-degree", G) or ("none", None).

    The interpolant through (x_i, 1/y_i) is fitted on r+1 points, checked on a
    few more and only then on the whole support.
    """
    if sm.n < r + 2:
        raise BadParams(f"need at least r+2 = {r + 2} positions")
    inv_y = F.inv(sm.y)
    pts = list(zip(sm.x.tolist(), inv_y.tolist()))
    head = min(len(pts), r + 1 + EXTRA_POINTS)
    G = F.interpolate_bounded(pts[:head], r)
    if G is None:
        return "none", None
    if head < len(pts):
        rest = np.asarray(sm.x[head:], dtype=np.int64)
        if np.any(F.poly_eval(G, rest) != inv_y[head:]):
            return "none", None
    if poly_degree(G) != r:
        return "not-minimal-degree", G
    return "ok", G


def is_goppa_representation(F: GF2m, sm: SupportMultiplier, r: int) -> list | None:
    status, G = representation_status(F, sm, r)
    return G if status == "ok" else None


@dataclass(frozen=True)
class ReprResult:
    sm: SupportMultiplier
    gamma: list
    draws: int
    params: MobiusParams | None


def to_goppa_representation(F: GF2m, sm: SupportMultiplier, r: int,
                            rng: np.random.Generator, budget: int | None = None) -> ReprResult:
    """Search maps with c = 1, lam = 1 and random (a, b, d).

    Every sampled triple counts as a draw, including those with a zero
    determinant or a pole on the support.
    """
    G = is_goppa_representation(F, sm, r)
    if G is not None:
        return ReprResult(sm, G, 0, None)
    budget = 8 * F.order if budget is None else budget
    for draw in range(1, budget + 1):
        a, b, d = (F.random(rng) for _ in range(3))
        p = MobiusParams(a, b, 1, d)
        if p.det(F) == 0:
            continue
        try:
            cand = mobius_apply(F, sm, p, r)
        except PoleHit:
            continue
        G = is_goppa_representation(F, cand, r)
        if G is not None:
            return ReprResult(cand, G, draw, p)
    raise Exhausted(f"no Goppa representation found in {budget} draws")
