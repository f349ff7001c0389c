import sys

import numpy as np
import pytest

from geophase import DiscretizedPath, StateVector

SQ2 = np.sqrt(0.5)

# spin-1/2 eigenstates along +z, +x, +y
UP_Z = StateVector([1, 0])
UP_X = StateVector([SQ2, SQ2])
UP_Y = StateVector([SQ2, 1j * SQ2])


def bloch_state(theta, phi):
    return StateVector([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def bloch_vector(s):
    a, b = s.components
    return np.array([2 * (a.conjugate() * b).real, 2 * (a.conjugate() * b).imag, abs(a) ** 2 - abs(b) ** 2])


def random_state(rng, dim):
    return StateVector(rng.normal(size=dim) + 1j * rng.normal(size=dim))


def random_path(rng, dim, n):
    return DiscretizedPath([random_state(rng, dim) for _ in range(n)])


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, (_, line) in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(line)
