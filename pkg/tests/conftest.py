import math

import numpy as np
import pytest

from qfilter import make_trine, random_ensemble

ACCEPTANCE_LINES = []


def same_up_to_phase(u, v, tol=1e-12):
    """True when two unit vectors differ only by a global phase."""
    return abs(abs(np.vdot(u, v)) - 1.0) < tol


def angle_gap(a, b):
    """Distance between two angles on the circle."""
    d = (a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def random_ensembles(seed, count, **kwargs):
    rng = np.random.default_rng(seed)
    return [random_ensemble(rng, **kwargs) for _ in range(count)]


@pytest.fixture
def trine():
    return make_trine()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
