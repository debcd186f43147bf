import pytest
from hypothesis import HealthCheck, settings

from qfalg.exactla import GF, QQ
from qfalg.zoo import nakayama_R

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def R():
    return nakayama_R(QQ)


@pytest.fixture(scope="session")
def F13():
    return GF(13)
