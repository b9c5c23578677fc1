from __future__ import annotations

import numpy as np
import pytest

from quadrel import linalg as la
from quadrel.attack import (full_attack, is_over_f2, recover_grs, support_recovery_dim2,
                            verify_pair)
from quadrel.codes import SupportMultiplier, canonical_basis, grs_generator
from quadrel.errors import BadParams, Exhausted, NoCleanCodeword, NotGRS
from quadrel.selftest import random_binary_code


@pytest.fixture(scope="module")
def attack5(key5):
    return full_attack(key5.F, key5.public, np.random.default_rng(11), seed=11)


def test_support_recovery_round_trip(F6, rng):
    for n in (10, 40, 64):
        x = rng.permutation(64)[:n]
        sm = SupportMultiplier(x, F6.random(rng, size=n, nonzero=True))
        G = grs_generator(F6, sm, 2)
        P = F6.random(rng, size=(2, 2))
        while la.rank(F6, P) < 2:
            P = F6.random(rng, size=(2, 2))
        out = support_recovery_dim2(F6, la.mat_mul(F6, P, G))
        assert la.row_space_equal(F6, grs_generator(F6, out, 2), G)


def test_support_recovery_rejects(F5, rng):
    with pytest.raises(NotGRS):
        support_recovery_dim2(F5, rng.integers(0, 2, size=(2, 12)))
    with pytest.raises(NotGRS):
        support_recovery_dim2(F5, F5.random(rng, size=(3, 12)))
    G = F5.random(rng, size=(2, 12), nonzero=True)
    G[:, 4] = 0
    with pytest.raises(NoCleanCodeword):
        support_recovery_dim2(F5, G)


def test_is_over_f2(F5, rng):
    B = rng.integers(0, 2, size=(2, 9))
    while la.rank_f2(B) < 2:
        B = rng.integers(0, 2, size=(2, 9))
    P = F5.random(rng, size=(2, 2))
    while la.rank(F5, P) < 2:
        P = F5.random(rng, size=(2, 2))
    assert is_over_f2(F5, la.mat_mul(F5, P, B))
    assert not is_over_f2(F5, F5.random(rng, size=(2, 9), nonzero=True))


def test_verify_pair(key5, rng):
    assert verify_pair(key5.F, key5.sm, key5.public, 2)
    wrong = SupportMultiplier(key5.x, key5.F.random(rng, size=32, nonzero=True))
    assert not verify_pair(key5.F, wrong, key5.public, 2)


def test_full_attack_recovers_key(key5, attack5):
    F = key5.F
    tr = attack5
    assert tr.success
    sm = SupportMultiplier(np.array(tr.x), np.array(tr.y))
    assert verify_pair(F, sm, key5.public, 2)
    assert len(tr.gamma) == 3
    assert np.array_equal(F.inv(F.poly_eval(tr.gamma, sm.x)), sm.y)


def test_attack_bookkeeping_white_box(key5, attack5):
    F = key5.F
    tr = attack5
    assert tr.dims == {"k1": 8, "k2": 8, "v": 6, "w": 8, "grs": 2}
    A = canonical_basis(F, key5.sm, 2)
    assert any(la.row_space_equal(F, tr.grs, A[2 * l:2 * l + 2]) for l in range(5))


def test_attack_is_seed_deterministic(key5, attack5):
    again = full_attack(key5.F, key5.public, np.random.default_rng(11), seed=11)
    assert (again.x, again.y, again.gamma) == (attack5.x, attack5.y, attack5.gamma)
    assert len(again.iterations) == len(attack5.iterations)


def test_attack_exhausts_on_random_code(F5, rng):
    G = random_binary_code(22, 32, rng)
    with pytest.raises(Exhausted) as info:
        full_attack(F5, G, rng, budget=1, solver_budget=2)
    tr = info.value.transcript
    assert not tr.success and tr.error.startswith("Exhausted")


def test_recover_grs_only_degree_two(key5, rng):
    with pytest.raises(BadParams):
        recover_grs(key5.F, key5.public, rng, r=3)
