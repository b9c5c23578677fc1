"""Compiled vs numpy elimination kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Shapes mirror what the solver and the code routines see: Macaulay blocks
over GF(2^5) and GF(2^6), binary generator matrices, small products.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from quadrel import _kernels_py
from quadrel.gf2m import GF2m

try:
    from quadrel import _kernels as _cy
except ImportError:  # pragma: no cover
    _cy = None


def cases(rng):
    for m, shape in ((5, (120, 200)), (5, (400, 700)), (6, (300, 500)), (10, (150, 150))):
        F = GF2m(m)
        A = F.random(rng, size=shape)
        yield (f"rref_gf m={m} {shape[0]}x{shape[1]}",
               lambda k, A=A, F=F: k.rref_gf(A.copy(), F.exp, F.log, F.q1))
    for shape in ((60, 120), (500, 1000)):
        B = rng.integers(0, 2, size=shape, dtype=np.uint8)
        yield f"rref_f2 {shape[0]}x{shape[1]}", lambda k, B=B: k.rref_f2(B.copy())
    F = GF2m(6)
    X, Y = F.random(rng, size=(36, 60)), F.random(rng, size=(60, 36))
    yield "matmul_gf m=6 36x60x36", lambda k: k.matmul_gf(X, Y, F.exp, F.log)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<28}{'numpy ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in cases(rng):
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        if _cy is None:
            print(f"{name:<28}{t_py:>12.2f}{'n/a':>12}{'':>10}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(_cy), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<28}{t_py:>12.2f}{t_cy:>12.2f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
