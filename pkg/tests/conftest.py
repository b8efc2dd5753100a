import numpy as np
import pytest

from ncsphere.elliptic import elliptic_triple
from ncsphere.moduli import phi_point

# acceptance gate lines, echoed in the terminal summary so the pass/fail
# verdicts survive pytest's output capture
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance gate")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)


@pytest.fixture(scope="session")
def asc_phi():
    return phi_point(0.4, 0.8, 1.1)


@pytest.fixture(scope="session")
def desc_phi():
    return phi_point(1.1, 0.8, 0.4)


@pytest.fixture(scope="session")
def asc_triple(asc_phi):
    return elliptic_triple(asc_phi)


@pytest.fixture(scope="session")
def desc_triple(desc_phi):
    return elliptic_triple(desc_phi)
