import pytest

from commahom.sample import (
    a2_algebra,
    example_setup,
    glued_algebra,
    hexagon_algebra,
    loop_algebra,
    point_algebra,
    square_algebra,
)
from commahom.verify import build_example_data


@pytest.fixture(scope="session")
def a2():
    return a2_algebra()


@pytest.fixture(scope="session")
def hexagon():
    return hexagon_algebra()


@pytest.fixture(scope="session")
def glued():
    return glued_algebra()


@pytest.fixture(scope="session")
def point():
    return point_algebra()


@pytest.fixture(scope="session")
def loop():
    return loop_algebra()


@pytest.fixture(scope="session")
def square():
    return square_algebra()


@pytest.fixture(scope="session")
def setup():
    return example_setup()


@pytest.fixture(scope="session")
def example_data():
    return build_example_data(bound=3, seed=0)
