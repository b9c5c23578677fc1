from __future__ import annotations

import numpy as np
import pytest

from quadrel import _core, _kernels_py
from quadrel.gf2m import GF2m

cy = pytest.importorskip("quadrel._kernels")


def test_backend_label():
    assert _core.BACKEND in ("cython", "numpy")


@pytest.mark.parametrize("m,mod", [(5, None), (6, 0x5B), (10, None)])
@pytest.mark.parametrize("ncols", [-1, 7])
def test_rref_gf_agrees(m, mod, ncols, rng):
    F = GF2m(m) if mod is None else GF2m(m, mod)
    for shape in ((6, 12), (12, 9), (15, 15)):
        A = F.random(rng, size=shape)
        A[2] = A[0] ^ A[1]  # force a dependency
        a, b = A.copy(), A.copy()
        pa = _kernels_py.rref_gf(a, F.exp, F.log, F.q1, ncols)
        pb = cy.rref_gf(b, F.exp, F.log, F.q1, ncols)
        assert pa == pb and np.array_equal(a, b)


def test_rref_f2_agrees(rng):
    for shape in ((8, 20), (30, 12)):
        A = rng.integers(0, 2, size=shape, dtype=np.uint8)
        a, b = A.copy(), A.copy()
        assert _kernels_py.rref_f2(a, 10) == cy.rref_f2(b, 10)
        assert np.array_equal(a, b)


def test_matmul_gf_agrees(F6, rng):
    A = F6.random(rng, size=(7, 11))
    B = F6.random(rng, size=(11, 5))
    assert np.array_equal(_kernels_py.matmul_gf(A, B, F6.exp, F6.log),
                          cy.matmul_gf(A, B, F6.exp, F6.log))
