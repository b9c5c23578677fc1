from __future__ import annotations

import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from quadrel.codes import keygen
from quadrel.gf2m import GF2m

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def F5() -> GF2m:
    return GF2m(5)


@pytest.fixture(scope="session")
def F6() -> GF2m:
    return GF2m(6)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def key5():
    return keygen(5, 32, 2, np.random.default_rng(7))


@pytest.fixture(scope="session")
def key6():
    return keygen(6, 60, 2, np.random.default_rng(8))


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    REPORT = getattr(mod, "REPORT", None)
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
