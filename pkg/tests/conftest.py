import numpy as np
import pytest

from hcframes.algebra import AlgebraElement, AlgebraShape
from hcframes.module import ModuleVector

SHAPES = [(1,), (2,), (1, 1), (2, 1), (3,), (1, 2, 1)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def scalar_vec(*values):
    """Module vector over C (shape [1]) with the given complex entries."""
    shape = AlgebraShape((1,))
    return ModuleVector(shape, tuple(AlgebraElement(shape, [[[v]]]) for v in values))


def scalar_el(v):
    return AlgebraElement(AlgebraShape((1,)), [[[v]]])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
