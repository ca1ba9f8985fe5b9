import pytest

from eiscong_lib.config import OracleConfig
from eiscong_lib.dirichlet import construct, quadratic_character, trivial_character


@pytest.fixture
def trivial():
    return trivial_character(1)


@pytest.fixture
def quad3():
    return quadratic_character(3)


@pytest.fixture
def quad4():
    return quadratic_character(4)


@pytest.fixture
def quad5():
    return quadratic_character(5)


@pytest.fixture
def chi5():
    """The order-4 character mod 5 with chi(2) = i."""
    return construct(5, [(2, 1, 4)])


@pytest.fixture
def fast_oracle():
    """Oracle settings small enough for unit tests."""
    return OracleConfig(cutoff=20_000, lattice_cutoff=300, im_z=8.0, tolerance=1e-6)
