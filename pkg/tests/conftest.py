import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tnorm.fixtures import load_toy  # noqa: E402
from tnorm.similarity import ComponentMatrix  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def toy_a():
    return load_toy("a")


@pytest.fixture(scope="session")
def toy_b():
    return load_toy("b")


@pytest.fixture(scope="session")
def toy_matrix(toy_a):
    return toy_a.matrix()


def random_matrix(rng, n_oov, n_iv, levels=None, undefined=0.2):
    """Random component matrix; ``levels`` quantizes values to force ties."""
    def draw(shape):
        if levels:
            return rng.integers(0, levels + 1, size=shape) / levels
        return rng.random(shape)

    shape = (n_oov, n_iv)
    oov = [f"o{j:03d}" for j in range(n_oov)]
    iv = [f"w{k:03d}" for k in rng.permutation(n_iv)]
    ctx_ok = rng.random(shape) >= undefined
    pho_ok = rng.random(shape) >= undefined
    return ComponentMatrix(oov, iv, draw(shape) * ctx_ok, ctx_ok,
                           draw(shape) * pho_ok, pho_ok, draw(shape))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
