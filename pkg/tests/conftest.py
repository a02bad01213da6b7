import random

import pytest

from tabloidchar.core import Permutation, validate_instance


@pytest.fixture
def e1():
    """mu = ((2,2),(4)), l = (2,1): m = 8, l = 2."""
    return validate_instance([[2, 2], [4]], [2, 1])


@pytest.fixture
def sigma_star():
    return Permutation.from_cycles([[1, 2, 3, 4], [5, 6], [7, 8]], 8)


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_permutation(rng, m):
    return Permutation(rng.sample(range(1, m + 1), m))


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
