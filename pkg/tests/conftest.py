import pytest
from hypothesis import HealthCheck, settings

from piqec.picode import GmdParams, construct_gmdelta

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def q212():
    return construct_gmdelta(GmdParams(2, 1, 2))


@pytest.fixture(scope="session")
def q424():
    return construct_gmdelta(GmdParams(4, 2, 4))


@pytest.fixture(scope="session")
def q111():
    return construct_gmdelta(GmdParams(1, 1, 1))


@pytest.fixture(scope="session")
def q332():
    return construct_gmdelta(GmdParams(3, 3, 2))
