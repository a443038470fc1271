import pytest

from reworknet import builtin_network


@pytest.fixture(scope="session")
def test1():
    return builtin_network("test1")


@pytest.fixture(scope="session")
def test2():
    return builtin_network("test2")


@pytest.fixture(scope="session")
def test3():
    return builtin_network("test3")


@pytest.fixture(scope="session")
def test4():
    return builtin_network("test4")


@pytest.fixture(scope="session")
def test5():
    return builtin_network("test5")
