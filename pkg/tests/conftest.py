import pytest

from brokensurf import samples, sphere_fixture, torus_fixture


@pytest.fixture(scope="session")
def torus():
    return torus_fixture()


@pytest.fixture(scope="session")
def sphere():
    return sphere_fixture()


@pytest.fixture()
def gen():
    return samples.rng(0)
