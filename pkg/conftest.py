"""Shared fixtures for the test suites."""

import numpy as np
import pytest

from environments.registry import get_environment
from models.market import MarketParams, MmParams, ZiParams
from models.environment import Mode


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def small_params() -> MarketParams:
    """A short, busy market so a run exercises plenty of matching."""
    return MarketParams(horizon=300, bg_arrival_rate=0.05, n_background=6, mm_arrival_rate=0.02)


@pytest.fixture
def zi() -> ZiParams:
    return ZiParams(r_min=0, r_max=500, eta=1.0)


@pytest.fixture
def mm() -> MmParams:
    return MmParams(num_rungs=5, rung_size=50, min_spread=256)


@pytest.fixture
def a1k_env():
    return get_environment("market:A-1k", "A-1k-eq")


@pytest.fixture
def b1k_env():
    return get_environment("market:B-1k", "B-1k-eq")


@pytest.fixture
def b1k_flip_env():
    return get_environment("market:B-1k", "B-1k-arb", mode=Mode.FLIP_KNOWN)
