import numpy as np
import pytest

from fdadm.array_geometry import ArrayConfig, Position, steering_vector
from fdadm.config import ExperimentConfig
from fdadm.ftr_channel import FtrParams

BOB_PARAMS = (2.3, 10.0, 0.5)
EVE_PARAMS = (5.3, 15.0, 0.35)


@pytest.fixture(scope="session")
def cfg():
    return ExperimentConfig.defaults()


@pytest.fixture(scope="session")
def array():
    return ArrayConfig()


@pytest.fixture(scope="session")
def h_bob(array):
    return steering_vector(array, Position.from_degrees(1000.0, 20.0, 30.0))


@pytest.fixture(scope="session")
def h_eve(array):
    return steering_vector(array, Position.from_degrees(1500.0, -20.0, 25.0))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def ftr(params, sigma2=0.5):
    m, k, d = params
    return FtrParams(m, k, d, sigma2)


ACCEPTANCE = {}


@pytest.fixture
def report():
    """Record one acceptance check: ``report(criterion, ok, detail)``."""

    def add(criterion, ok, detail):
        ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))

    return add


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[n]
        ok = all(c for c, _ in checks)
        detail = "; ".join(d for _, d in checks)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
