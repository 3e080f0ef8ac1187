import math

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

THREE_HALVES_PI = 1.5 * math.pi


@pytest.fixture
def canonical_theta_star():
    return THREE_HALVES_PI
