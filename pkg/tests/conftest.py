import numpy as np
import pytest

from mubkit import construct_mub_set


@pytest.fixture(scope="session")
def mub_cache():
    cache = {}

    def get(d):
        if d not in cache:
            cache[d] = construct_mub_set(d)
        return cache[d]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
