import pytest

from valfield.composite import CompositeField
from valfield.finite_field import prime_field
from valfield.laurent import LaurentField


@pytest.fixture(scope="session")
def F2():
    return prime_field(2)


@pytest.fixture(scope="session")
def F3():
    return prime_field(3)


@pytest.fixture(scope="session")
def K2(F2):
    return LaurentField(F2, "t", default_prec=12)


@pytest.fixture(scope="session")
def K3(F3):
    return LaurentField(F3, "t", default_prec=12)


@pytest.fixture(scope="session")
def C2(F2):
    return CompositeField(F2, prec_t=3, prec_u=3)
