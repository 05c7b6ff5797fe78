"""Shared factories for the test suite."""

import math

import numpy as np

from evtrisk import TailParams


def random_params(rng, gamma_range=(-2.0, 0.95)):
    """Randomized valid tail parameters for property sweeps."""
    gamma = rng.uniform(*gamma_range)
    m = int(rng.integers(20, 500))
    k = int(rng.integers(2, max(3, m // 4)))
    return TailParams(
        k=k,
        m=m,
        gamma=gamma,
        threshold=rng.uniform(-10.0, 10.0),
        scale=float(np.exp(rng.uniform(-2.0, 3.0))),
    )


def exact_pareto2_params():
    """Parameters whose tail reproduces Pareto(2) above its 0.90-quantile."""
    s = math.sqrt(10.0)
    return TailParams(k=10, m=100, gamma=0.5, threshold=s, scale=s / 2.0)
