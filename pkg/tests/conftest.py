"""
Shared test fixtures
"""

import os
import sys

import numpy as np
import pytest

# Add the repository root to Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models import ProtocolConfig, WealthSample  # noqa: E402
from utils.rng_utils import make_generator  # noqa: E402

EXPONENTIAL_RATE = 0.26
PARETO_ALPHA = 2.84


@pytest.fixture
def rng():
    return make_generator(12345)


def exponential_values(n: int, seed: int, rate: float = EXPONENTIAL_RATE) -> np.ndarray:
    return make_generator(seed).exponential(1.0 / rate, size=n)


def pareto_values(n: int, seed: int, alpha: float = PARETO_ALPHA, xmin: float = 1.0) -> np.ndarray:
    """Inverse-CDF draws with density ~ x^-alpha above xmin"""
    u = make_generator(seed).random(size=n)
    return xmin * (1.0 - u) ** (-1.0 / (alpha - 1.0))


@pytest.fixture
def exponential_sample():
    return WealthSample(exponential_values(100_000, seed=7))


@pytest.fixture
def pareto_sample():
    return WealthSample(pareto_values(100_000, seed=11))


@pytest.fixture
def small_protocol():
    return ProtocolConfig(n=64, transient=50, measure_iters=5, realizations=3,
                          base_seed=99, snapshot_only=True, workers=1)
