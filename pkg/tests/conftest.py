import pytest

from subspace_forge.gf import make_field
from subspace_forge.subspace import Subspace
from subspace_forge.family import Family


@pytest.fixture(scope="session")
def f2():
    return make_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f5():
    return make_field(5)


@pytest.fixture(scope="session")
def f7():
    return make_field(7)


@pytest.fixture(scope="session")
def four_line_family(f2):
    """The four lines e1, e2, e3, (1,1,1) of GF(2)^3: a partial spread
    with exact AAD parameter 1 and AS parameter 2."""
    lines = [
        Subspace.from_generators(f2, 3, [v])
        for v in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    ]
    return Family(f2, 3, 1, tuple(lines))
