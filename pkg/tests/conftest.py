import pytest
from hypothesis import HealthCheck, settings

from qmds.gf import square_field

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def f4():
    return square_field(2)


@pytest.fixture(scope="session")
def f9():
    return square_field(3)


@pytest.fixture(scope="session")
def f16():
    return square_field(4)


@pytest.fixture(scope="session")
def f25():
    return square_field(5)


@pytest.fixture(scope="session")
def f49():
    return square_field(7)


@pytest.fixture(scope="session")
def f64():
    return square_field(8)
