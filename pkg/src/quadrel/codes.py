"""Generalized Reed-Solomon, alternant and binary Goppa codes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import BadDegree, BadParams, DimensionMismatch, Exhausted, RankDeficient
from .gf2m import GF2m, poly_degree


@dataclass(frozen=True)
class SupportMultiplier:
    """Support x (distinct entries) and multiplier y (nonzero entries)."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.int64).copy()
        y = np.asarray(self.y, dtype=np.int64).copy()
        if x.ndim != 1 or x.shape != y.shape:
            raise DimensionMismatch("support and multiplier must be vectors of equal length")
        if np.unique(x).size != x.size:
            raise BadParams("support entries must be pairwise distinct")
        if np.any(y == 0):
            raise BadParams("multiplier entries must be nonzero")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.size


def grs_generator(F: GF2m, sm: SupportMultiplier, r: int) -> np.ndarray:
    """r x n matrix whose row i is x^i * y."""
    if r > sm.n:
        raise BadDegree(f"r={r} exceeds length {sm.n}")
    if r < 0:
        raise BadDegree("r must be non-negative")
    return np.array([F.mul(F.pow(sm.x, i), sm.y) for i in range(r)],
                    dtype=np.int64).reshape(r, sm.n)


def dual_multiplier(F: GF2m, sm: SupportMultiplier) -> np.ndarray:
    """y_perp with GRS_r(x, y)^perp = GRS_{n-r}(x, y_perp)."""
    x = sm.x
    out = np.empty_like(x)
    for i in range(sm.n):
        d = x[i] ^ np.delete(x, i)
        lg = int(F.log[d].sum()) % F.q1 if d.size else 0
        out[i] = F.inv(F.mul(int(F.exp[lg]), int(sm.y[i])))
    return out


def alternant_code(F: GF2m, sm: SupportMultiplier, r: int) -> np.ndarray:
    """Binary generator (RREF) of GRS_r(x, y)^perp intersected with F_2^n."""
    if r == 0:
        return np.eye(sm.n, dtype=np.uint8)
    return la.subfield_subcode(F, grs_generator(F, sm, r))


def goppa_multiplier(F: GF2m, x, gamma) -> np.ndarray:
    vals = F.poly_eval(list(gamma), np.asarray(x, dtype=np.int64))
    if np.any(vals == 0):
        bad = int(np.flatnonzero(vals == 0)[0])
        raise BadParams(f"Goppa polynomial vanishes at support position {bad}")
    return F.inv(vals)


def goppa_code(F: GF2m, x, gamma) -> np.ndarray:
    """Binary generator (RREF) of Goppa(x, gamma) = Alt_r(x, 1/gamma(x))."""
    r = poly_degree(gamma)
    if r < 1:
        raise BadDegree("Goppa polynomial must have degree at least 1")
    y = goppa_multiplier(F, x, gamma)
    return alternant_code(F, SupportMultiplier(x, y), r)


@dataclass(frozen=True)
class GoppaKey:
    F: GF2m
    x: np.ndarray
    gamma: tuple
    public: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return self.F.m

    @property
    def n(self) -> int:
        return int(self.x.size)

    @property
    def r(self) -> int:
        return poly_degree(list(self.gamma))

    @property
    def y(self) -> np.ndarray:
        return goppa_multiplier(self.F, self.x, self.gamma)

    @property
    def sm(self) -> SupportMultiplier:
        return SupportMultiplier(self.x, self.y)


def keygen(m: int, n: int, r: int, rng: np.random.Generator,
           modulus: int | None = None, budget: int = 64) -> GoppaKey:
    """Random binary Goppa key with a square-free Goppa polynomial of degree r.

    Draws giving a code of dimension other than n - rm are rejected.
    """
    F = GF2m(m, modulus)
    if not 1 <= n <= F.order:
        raise BadParams(f"n must lie in [1, 2^m] = [1, {F.order}]")
    if r < 1:
        raise BadParams("r must be at least 1")
    for _ in range(budget):
        x = rng.permutation(F.order)[:n].astype(np.int64)
        try:
            gamma = F.random_squarefree_poly(r, rng, avoid=x)
        except Exhausted:
            continue
        pub = goppa_code(F, x, gamma)
        if pub.shape[0] == n - r * m:
            x.setflags(write=False)
            pub.setflags(write=False)
            return GoppaKey(F, x, tuple(int(c) for c in gamma), pub)
    raise Exhausted(f"no key of dimension n - rm found in {budget} draws")


def goppa_square_identity(F: GF2m, x, gamma) -> bool:
    """Whether Goppa(x, gamma) = Alt_{2r}(x, 1/gamma(x)^2) as row spaces."""
    gamma = list(gamma)
    if not F.is_squarefree(gamma):
        raise BadParams("the identity is only claimed for square-free polynomials")
    r = poly_degree(gamma)
    y = goppa_multiplier(F, x, gamma)
    alt = alternant_code(F, SupportMultiplier(x, F.mul(y, y)), 2 * r)
    return la.row_space_equal_f2(goppa_code(F, x, gamma), alt)


def canonical_basis(F: GF2m, sm: SupportMultiplier, r: int) -> np.ndarray:
    """rm x n matrix; row l*r + a is (x^a * y)^(2^l)."""
    G = grs_generator(F, sm, r)
    A = np.vstack([F.frobenius(G, l) for l in range(F.m)])
    if la.rank(F, A) != r * F.m:
        raise RankDeficient("canonical basis vectors are linearly dependent")
    return A
