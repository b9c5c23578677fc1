from __future__ import annotations

import numpy as np
import pytest

from quadrel import linalg as la
from quadrel.codes import SupportMultiplier, alternant_code, keygen
from quadrel.errors import Exhausted, PoleHit
from quadrel.goppa_repr import (MobiusParams, is_goppa_representation, mobius_apply,
                                mobius_inverse, representation_status, to_goppa_representation)


def random_params(F, rng, affine=False):
    while True:
        a, b, d = (F.random(rng) for _ in range(3))
        c = 0 if affine else F.random(rng, nonzero=True)
        p = MobiusParams(a, b, c, d, F.random(rng, nonzero=True))
        if p.det(F):
            return p


def scramble(F, sm, rng, r=2):
    while True:
        p = random_params(F, rng)
        try:
            return mobius_apply(F, sm, p, r)
        except PoleHit:
            continue


def test_identity_map(key5):
    sm = key5.sm
    out = mobius_apply(key5.F, sm, MobiusParams(1, 0, 0, 1), 2)
    assert np.array_equal(out.x, sm.x) and np.array_equal(out.y, sm.y)


def test_code_invariance(key5, rng):
    F = key5.F
    k = keygen(5, 24, 2, rng)
    ref = alternant_code(F, k.sm, 2)
    for _ in range(20):
        sm = scramble(F, k.sm, rng)
        assert la.row_space_equal_f2(alternant_code(F, sm, 2), ref)


def test_pole_hit(F5):
    sm = SupportMultiplier(np.array([1, 2, 3, 4]), np.ones(4, dtype=np.int64))
    p = MobiusParams(1, 0, 1, 3)  # c x + d vanishes at x = 3
    with pytest.raises(PoleHit):
        mobius_apply(F5, sm, p, 2)


def test_inverse_composition(F5, rng):
    k = keygen(5, 20, 2, rng)
    for r in (2, 3):
        for _ in range(10):
            p = random_params(F5, rng)
            try:
                img = mobius_apply(F5, k.sm, p, r)
            except PoleHit:
                continue
            back = mobius_apply(F5, img, mobius_inverse(F5, p, r), r)
            assert np.array_equal(back.x, k.sm.x) and np.array_equal(back.y, k.sm.y)


def test_detects_own_polynomial(key5):
    assert is_goppa_representation(key5.F, key5.sm, 2) == list(key5.gamma)


def test_affine_image_stays_representation(F5, rng):
    k = keygen(5, 24, 2, rng)
    for _ in range(10):
        sm = mobius_apply(F5, k.sm, random_params(F5, rng, affine=True), 2)
        G = is_goppa_representation(F5, sm, 2)
        assert G is not None and len(G) == 3
        assert np.array_equal(F5.inv(F5.poly_eval(G, sm.x)), sm.y)


def test_non_affine_image_is_rejected(F5, rng):
    k = keygen(5, 24, 2, rng)
    for _ in range(10):
        assert is_goppa_representation(F5, scramble(F5, k.sm, rng), 2) is None


def test_not_minimal_degree(F5):
    x = np.arange(6, 15)
    y = F5.inv(F5.poly_eval([5, 1], x))  # degree 1 < r
    status, G = representation_status(F5, SupportMultiplier(x, y), 2)
    assert status == "not-minimal-degree" and G == [5, 1]


def test_already_representation_is_returned(key5, rng):
    res = to_goppa_representation(key5.F, key5.sm, 2, rng)
    assert res.draws == 0 and res.gamma == list(key5.gamma)


def test_full_support_is_immediate(F5, rng):
    # on the full field every non-affine map has its pole on the support
    k = keygen(5, 32, 2, rng)
    sm = mobius_apply(F5, k.sm, random_params(F5, rng, affine=True), 2)
    res = to_goppa_representation(F5, sm, 2, rng)
    assert res.draws == 0 and len(res.gamma) == 3


def test_recovery_postconditions(F5, rng):
    k = keygen(5, 24, 2, rng)
    for _ in range(5):
        sm = scramble(F5, k.sm, rng)
        res = to_goppa_representation(F5, sm, 2, rng)
        G = res.gamma
        assert len(G) == 3 and G[-1] != 0
        vals = F5.poly_eval(G, res.sm.x)
        assert np.all(vals != 0) and np.array_equal(F5.inv(vals), res.sm.y)
        assert la.row_space_equal_f2(alternant_code(F5, res.sm, 2), k.public)


def test_budget_exhaustion(F5, rng):
    k = keygen(5, 24, 2, rng)
    sm = scramble(F5, k.sm, rng)
    with pytest.raises(Exhausted):
        to_goppa_representation(F5, sm, 2, rng, budget=0)
