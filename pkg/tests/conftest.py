import math
import cmath
import random

import pytest
from hypothesis import settings

settings.register_profile("deterministic", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("deterministic")


@pytest.fixture
def rng():
    return random.Random(0)


def e_unit(t: float) -> complex:
    """Reference exponential for oracles, independent of the package path."""
    return cmath.exp(2j * math.pi * t)
