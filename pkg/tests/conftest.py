import pytest

from config.settings import settings
from src.generators import grid, hypercube, path, tripod


@pytest.fixture
def fixtures_dir():
    return settings.FIXTURES_DIR


@pytest.fixture
def q2():
    return hypercube(2)


@pytest.fixture
def q3():
    return hypercube(3)


@pytest.fixture
def path3():
    return path(3)


@pytest.fixture
def path4():
    return path(4)


@pytest.fixture
def grid33():
    return grid(3, 3)


@pytest.fixture
def tripod_space():
    return tripod()
