from fractions import Fraction

import pytest
from hypothesis import settings

from polypar.catalog import hexagon, l1_space, linf_space

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def l1_2():
    return l1_space(2)


@pytest.fixture(scope="session")
def l1_3():
    return l1_space(3)


@pytest.fixture(scope="session")
def linf_2():
    return linf_space(2)


@pytest.fixture(scope="session")
def linf_3():
    return linf_space(3)


@pytest.fixture(scope="session")
def hexa():
    return hexagon()


def F(a, b=1):
    return Fraction(a, b)
