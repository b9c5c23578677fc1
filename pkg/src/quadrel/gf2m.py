"""Arithmetic in GF(2^m) and univariate polynomials over it.

Field elements are plain Python ints (or numpy integer arrays) whose bits are
the coefficients of the element in the polynomial basis, least significant bit
first.  All arithmetic goes through a :class:`GF2m` context, which owns the
modulus and precomputed exponential/logarithm tables.  Every scalar method also
accepts numpy arrays and then works elementwise.

Polynomials over the field are lists of ints, lowest degree first, with no
trailing zeros; the zero polynomial is the empty list.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadDegree,
    DivisionByZero,
    DuplicateAbscissa,
    Exhausted,
    ParseError,
    ReducibleModulus,
)

M_MIN, M_MAX = 2, 16


# ---------------------------------------------------------------------------
# F_2[x] helpers on int bit-vectors (used only at field construction)


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _f2_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a and a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _f2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _f2_mod(a, b)
    return a


def is_irreducible_f2(f: int) -> bool:
    """Ben-Or test: gcd(f, x^(2^i) - x) == 1 for every i <= deg(f)/2."""
    d = f.bit_length() - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = 0b10
    t = x
    for _ in range(d // 2):
        t = _f2_mod(_clmul(t, t), f)
        if _f2_gcd(f, t ^ x) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(m: int) -> int:
    """Numerically smallest irreducible polynomial of degree m over F_2."""
    if not M_MIN <= m <= M_MAX:
        raise BadDegree(f"m must lie in [{M_MIN}, {M_MAX}], got {m}")
    f = (1 << m) | 1
    while not is_irreducible_f2(f):
        f += 2
    return f


def _factor_small(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------


class GF2m:
    """The field GF(2^m) with a fixed polynomial-basis modulus.

    Instances are immutable and can be shared freely between threads.
    """

    def __init__(self, m: int, modulus: int | None = None):
        if not M_MIN <= m <= M_MAX:
            raise BadDegree(f"m must lie in [{M_MIN}, {M_MAX}], got {m}")
        if modulus is None:
            modulus = default_modulus(m)
        if modulus.bit_length() - 1 != m:
            raise BadDegree(f"modulus 0x{modulus:x} does not have degree {m}")
        if not modulus & 1 or not is_irreducible_f2(modulus):
            raise ReducibleModulus(f"0x{modulus:x} is reducible over F_2")
        self.m = m
        self.modulus = modulus
        self.order = q = 1 << m
        self.q1 = q1 = q - 1
        self.generator = g = self._find_generator()

        exp = np.zeros(4 * q1 + 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        a = 1
        for i in range(q1):
            exp[i] = a
            log[a] = i
            a = self._slow_mul(a, g)
        exp[q1 : 2 * q1] = exp[:q1]
        # log(0) points into the zero tail of exp, so products with 0 vanish
        # without masking: any index >= 2*q1 reads 0.
        log[0] = 2 * q1
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp = exp
        self.log = log
        self._exp_l = exp.tolist()
        self._log_l = log.tolist()

    # -- construction helpers -------------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        return _f2_mod(_clmul(a, b), self.modulus)

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        primes = _factor_small(self.q1)
        for g in range(2, self.order):
            if all(self._slow_pow(g, self.q1 // p) != 1 for p in primes):
                return g
        return 1  # only reachable for q1 == 1, excluded by M_MIN

    # -- identity ---------------------------------------------------------------

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, modulus=0x{self.modulus:x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2m) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    def header(self) -> str:
        return f"GF2M m={self.m} mod=0x{self.modulus:x}"

    @classmethod
    def from_header(cls, line: str) -> "GF2m":
        parts = line.split()
        try:
            if parts[0] != "GF2M":
                raise ValueError
            kv = dict(p.split("=", 1) for p in parts[1:])
            return cls(int(kv["m"]), int(kv["mod"], 16))
        except (ValueError, KeyError, IndexError) as exc:
            raise ParseError(f"bad field header: {line!r}") from exc

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- arithmetic -------------------------------------------------------------

    @staticmethod
    def add(a, b):
        return a ^ b

    sub = add

    def mul(self, a, b):
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            return self._exp_l[self._log_l[a] + self._log_l[b]]
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if isinstance(a, (int, np.integer)):
            if a == 0:
                raise DivisionByZero("inverse of 0 in GF(2^m)")
            return self._exp_l[self.q1 - self._log_l[a]]
        a = np.asarray(a)
        if np.any(a == 0):
            raise DivisionByZero("inverse of 0 in GF(2^m)")
        return self.exp[self.q1 - self.log[a]]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if isinstance(a, (int, np.integer)):
            if a == 0:
                if e < 0:
                    raise DivisionByZero("0 raised to a negative power")
                return 1 if e == 0 else 0
            return self._exp_l[(self._log_l[a] * e) % self.q1]
        a = np.asarray(a)
        if e < 0 and np.any(a == 0):
            raise DivisionByZero("0 raised to a negative power")
        out = self.exp[(self.log[a] * e) % self.q1]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def frobenius(self, a, j: int = 1):
        """a ** (2**j); j is taken modulo m."""
        return self.pow(a, pow(2, j % self.m))

    def sqrt(self, a):
        return self.frobenius(a, self.m - 1)

    def trace(self, a):
        """Absolute trace to F_2: sum of the m Frobenius conjugates."""
        t = a
        b = a
        for _ in range(self.m - 1):
            b = self.mul(b, b)
            t = t ^ b
        return t

    def random(self, rng: np.random.Generator, size=None, nonzero: bool = False):
        lo = 1 if nonzero else 0
        if size is None:
            return int(rng.integers(lo, self.order))
        return rng.integers(lo, self.order, size=size, dtype=np.int64)

    # -- polynomials --------------------------------------------------------------

    def poly_eval(self, P: Sequence[int], pt):
        """Horner evaluation; pt may be a scalar or an array of points."""
        if isinstance(pt, (int, np.integer)):
            acc = 0
            for c in reversed(P):
                acc = self.mul(acc, pt) ^ c
            return acc
        pt = np.asarray(pt, dtype=np.int64)
        acc = np.zeros_like(pt)
        for c in reversed(P):
            acc = self.mul(acc, pt) ^ c
        return acc

    def poly_add(self, P, Q):
        n = max(len(P), len(Q))
        out = [(P[i] if i < len(P) else 0) ^ (Q[i] if i < len(Q) else 0) for i in range(n)]
        return poly_trim(out)

    def poly_scale(self, P, c):
        return poly_trim([self.mul(a, c) for a in P])

    def poly_mul(self, P, Q):
        if not P or not Q:
            return []
        out = [0] * (len(P) + len(Q) - 1)
        for i, a in enumerate(P):
            if a:
                for j, b in enumerate(Q):
                    out[i + j] ^= self.mul(a, b)
        return poly_trim(out)

    def poly_divmod(self, P, Q):
        Q = poly_trim(list(Q))
        if not Q:
            raise DivisionByZero("polynomial division by zero")
        R = list(P)
        dq = len(Q) - 1
        lead_inv = self.inv(Q[-1])
        quot = [0] * max(len(R) - dq, 0)
        for k in range(len(R) - 1, dq - 1, -1):
            c = R[k]
            if c:
                f = self.mul(c, lead_inv)
                quot[k - dq] = f
                for j, b in enumerate(Q):
                    R[k - dq + j] ^= self.mul(f, b)
        return poly_trim(quot), poly_trim(R[:dq])

    def poly_gcd(self, P, Q):
        P, Q = poly_trim(list(P)), poly_trim(list(Q))
        while Q:
            P, Q = Q, self.poly_divmod(P, Q)[1]
        if P:
            P = self.poly_scale(P, self.inv(P[-1]))
        return P

    @staticmethod
    def poly_deriv(P):
        # characteristic 2: only odd-degree terms survive
        return poly_trim([c if i % 2 else 0 for i, c in enumerate(P[1:], start=1)])

    def poly_from_roots(self, roots: Iterable[int]):
        P = [1]
        for z in roots:
            P = self.poly_mul(P, [z, 1])
        return P

    def is_squarefree(self, P) -> bool:
        return poly_degree(self.poly_gcd(P, self.poly_deriv(P))) == 0

    def roots(self, P) -> list[int]:
        """All roots in the field, by exhaustive evaluation."""
        vals = self.poly_eval(P, self.elements())
        return [int(z) for z in np.nonzero(vals == 0)[0]]

    # -- interpolation --------------------------------------------------------------

    def interpolate(self, xs: Sequence[int], ys: Sequence[int]) -> list[int]:
        """Newton interpolation through all given points."""
        xs = [int(v) for v in xs]
        if len(set(xs)) != len(xs):
            raise DuplicateAbscissa("interpolation abscissae must be distinct")
        coef = [int(v) for v in ys]
        n = len(xs)
        for k in range(1, n):
            for i in range(n - 1, k - 1, -1):
                coef[i] = self.div(coef[i] ^ coef[i - 1], xs[i] ^ xs[i - k])
        # expand the Newton form into the monomial basis
        P: list[int] = []
        for k in range(n - 1, -1, -1):
            P = self.poly_add(self.poly_mul(P, [xs[k], 1]), [coef[k]])
        return P

    def interpolate_bounded(self, points: Sequence[tuple[int, int]], r: int):
        """Degree <= r interpolant through ``points``, or None.

        The candidate is built from the first r+1 points and then checked
        against the remaining points in order, stopping at the first mismatch.
        """
        xs = [int(p[0]) for p in points]
        if len(set(xs)) != len(xs):
            raise DuplicateAbscissa("interpolation abscissae must be distinct")
        if len(points) < r + 2:
            raise ValueError(f"need at least r+2 = {r + 2} points, got {len(points)}")
        P = self.interpolate(xs[: r + 1], [p[1] for p in points[: r + 1]])
        for x, y in points[r + 1 :]:
            if self.poly_eval(P, int(x)) != int(y):
                return None
        return P

    # -- random polynomials -----------------------------------------------------------

    def random_squarefree_poly(self, r: int, rng: np.random.Generator,
                               avoid: Iterable[int] = (), budget: int = 10_000):
        """Monic square-free degree-r polynomial with no root in ``avoid``.

        For r == 2 the draw is an irreducible quadratic.
        """
        if r < 1:
            raise BadDegree("degree must be >= 1")
        avoid = np.fromiter((int(a) for a in avoid), dtype=np.int64)
        for _ in range(budget):
            P = [self.random(rng) for _ in range(r)] + [1]
            if r == 2:
                if self.roots(P):
                    continue
            elif not self.is_squarefree(P):
                continue
            if avoid.size and np.any(self.poly_eval(P, avoid) == 0):
                continue
            return P
        raise Exhausted(f"no square-free degree-{r} polynomial found in {budget} draws")


def poly_trim(P: list[int]) -> list[int]:
    while P and P[-1] == 0:
        P.pop()
    return P


def poly_degree(P: Sequence[int]) -> int:
    return len(P) - 1
