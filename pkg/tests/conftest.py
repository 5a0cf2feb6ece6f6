import numpy as np
import pytest

from schatten_pinsker.matcore import ginibre, random_unitary, wishart_density


@pytest.fixture
def rng():
    return np.random.default_rng(20150220)


def random_pair(rng, dim):
    return ginibre(rng, dim), ginibre(rng, dim)


def random_density_pair(rng, dim, rank=None):
    return wishart_density(rng, dim, rank), wishart_density(rng, dim, rank)


def rotate(rng, *mats):
    """Conjugate all matrices by one Haar unitary."""
    U = random_unitary(rng, mats[0].shape[0])
    return [U @ M @ U.conj().T for M in mats]


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[1][:-1])):
            terminalreporter.write_line(line)
