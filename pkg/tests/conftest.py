import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_pursuers(rng, n, box=5.0):
    return rng.uniform(-box, box, size=(n, 3))


def random_evader(rng, box=5.0):
    return np.array([rng.uniform(-box, box), rng.uniform(-box, box), box * (1.0 - rng.random())])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
