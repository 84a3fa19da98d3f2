import random

import pytest
from hypothesis import HealthCheck, settings

from cyclenice.config import get_settings
from cyclenice.graph import families
from tests.graphs import chorded_c6, quasi_diamond

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    for name in ("CYCLE_CAP", "EAR_BUDGET", "CLAIM_PATH_CAP", "MAX_PROPOSALS", "LOG_LEVEL"):
        monkeypatch.delenv(f"CYCLENICE_{name}", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def k4():
    return families.k4()


@pytest.fixture
def c6bar():
    return families.c6bar()


@pytest.fixture
def w5():
    return families.w5()


@pytest.fixture
def diamond():
    return families.diamond()


@pytest.fixture
def two_cycle():
    return families.cycle(2)


@pytest.fixture
def chorded():
    return chorded_c6()


@pytest.fixture
def quasi():
    return quasi_diamond()
