import random

import pytest

from qinv import seeds
from qinv.fusion.validate import validate
from qinv.services.engine import Engine


def _validated(name):
    cat, _ = validate(seeds.bundled(name))
    return cat


@pytest.fixture(scope="session")
def fib():
    return _validated("fibonacci")


@pytest.fixture(scope="session")
def toric():
    return _validated("toric")


@pytest.fixture(scope="session")
def z2():
    return _validated("vec_z2")


@pytest.fixture(scope="session")
def z3w():
    return _validated("vec_z3_omega")


@pytest.fixture(scope="session")
def z3():
    return _validated("vec_z3")


@pytest.fixture(scope="session")
def z4():
    return _validated("vec_z4_z2")


@pytest.fixture(scope="session")
def z4_gauged():
    return _validated("vec_z4_z2_gauged")


@pytest.fixture(scope="session")
def s3w():
    return _validated("vec_s3_omega")


@pytest.fixture
def rng():
    return random.Random(1234)


def _engine(cat):
    return Engine(cat)


@pytest.fixture(scope="session")
def toric_engine(toric):
    return _engine(toric)


@pytest.fixture(scope="session")
def fib_engine(fib):
    return _engine(fib)


@pytest.fixture(scope="session")
def z2_engine(z2):
    return _engine(z2)


@pytest.fixture(scope="session")
def z3w_engine(z3w):
    return _engine(z3w)


@pytest.fixture(scope="session")
def z4_engine(z4):
    return _engine(z4)


@pytest.fixture(scope="session")
def s3w_engine(s3w):
    return _engine(s3w)
