import numpy as np
import pytest

from crossbeurling.fixtures import fixture


@pytest.fixture(scope="session")
def f1():
    return fixture("F1")


@pytest.fixture(scope="session")
def f2():
    return fixture("F2")


@pytest.fixture(scope="session")
def f3():
    return fixture("F3")


@pytest.fixture(scope="session")
def f4():
    return fixture("F4")


@pytest.fixture(scope="session")
def f5():
    return fixture("F5")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
