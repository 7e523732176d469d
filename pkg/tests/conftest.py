import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", 40)),
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

TAUS = [0.2 + 0.9j, 1j, -0.35 + 1.3j, 0.1 + 0.6j]


@pytest.fixture
def tau():
    return 0.2 + 0.9j


@pytest.fixture(params=TAUS, ids=lambda t: f"tau={t}")
def any_tau(request):
    return request.param
