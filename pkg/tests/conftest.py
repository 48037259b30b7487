import numpy as np
import pytest

from grover_walk.lattice import GROVER, WaveWindow


def dense_walk_matrix(x_min, x_max, omega):
    """Step operator on the window built block by block, zero outside the window."""
    n = x_max - x_min + 1
    U = np.zeros((3 * n, 3 * n), dtype=complex)

    def coin(x):
        return omega * GROVER if x == 0 else GROVER

    for i, x in enumerate(range(x_min, x_max + 1)):
        # row chirality j at x receives from site x + shift[j]
        for j, src in ((0, x + 1), (1, x), (2, x - 1)):
            if x_min <= src <= x_max:
                k = src - x_min
                U[3 * i + j, 3 * k:3 * k + 3] = coin(src)[j]
    return U


def random_window(rng, x_min=-6, x_max=6):
    amps = rng.normal(size=(x_max - x_min + 1, 3)) + 1j * rng.normal(size=(x_max - x_min + 1, 3))
    return WaveWindow(x_min, amps)


@pytest.fixture
def rng():
    return np.random.default_rng(20160713)


def pytest_terminal_summary(terminalreporter):
    lines = getattr(terminalreporter.config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
