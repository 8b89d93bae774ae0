import numpy as np
import pytest

from spingame.hilbert import Direction, TwoQubitState, make_reference_basis_yx, make_singlet
from spingame.cvalspin import XiDistribution


def random_state(rng):
    amps = rng.normal(size=4) + 1j * rng.normal(size=4)
    amps /= np.linalg.norm(amps)
    return TwoQubitState(amps)


def random_product_state(rng):
    k1 = rng.normal(size=2) + 1j * rng.normal(size=2)
    k2 = rng.normal(size=2) + 1j * rng.normal(size=2)
    return TwoQubitState.product(k1, k2)


def random_direction(rng):
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return Direction(float(v[0]), float(v[1]), float(v[2]))


@pytest.fixture
def singlet():
    return make_singlet()


@pytest.fixture
def yx_basis():
    return make_reference_basis_yx()


@pytest.fixture
def xi_two():
    return XiDistribution.two_point()


@pytest.fixture
def xi_three():
    return XiDistribution.three_point()
