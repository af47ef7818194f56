import pytest

from categories import CycCategory, FinCategory, OrdCategory, TrivialCategory, wreath
from perfect import perfect


@pytest.fixture(scope="session")
def O():
    return OrdCategory()


@pytest.fixture(scope="session")
def F():
    return FinCategory()


@pytest.fixture(scope="session")
def triv():
    return TrivialCategory()


@pytest.fixture(scope="session")
def cyc():
    return CycCategory()


@pytest.fixture(scope="session")
def OO():
    """O≀O, the twofold wreath power of O."""
    return wreath(OrdCategory(), OrdCategory())


@pytest.fixture(scope="session")
def PO(O):
    return perfect(O)


@pytest.fixture(scope="session")
def PF(F):
    return perfect(F)


@pytest.fixture(scope="session")
def POO(OO):
    return perfect(OO)
