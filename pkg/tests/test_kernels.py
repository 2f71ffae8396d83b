"""Both kernel backends must agree with each other and with exact arithmetic."""
import random
from fractions import Fraction

import pytest

from simul_latency import _kernels, _kernels_py

import oracles


def test_backend_selected():
    assert _kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("d", [0, 0.5, 1, 2])
def test_cost_delay_matches_exact(kernels, d):
    rng = random.Random(d)
    for _ in range(200):
        n = rng.randint(1, 30)
        g = sorted(rng.randint(0, 30) for _ in range(n))
        exact = [float(x) for x in oracles.g_prime(g, Fraction(d))]
        assert kernels.cost_delay(g, d) == exact
        assert kernels.cost_delay_closed(g, d) == exact


def test_backends_bit_identical(rng):
    try:
        from simul_latency import _kernels_c
    except ImportError:
        pytest.skip("extension not built")
    for _ in range(500):
        n = rng.randint(1, 50)
        g = [rng.uniform(0, 50) for _ in range(n)]
        d = rng.choice([0.0, 0.5, 1.0, rng.random() * 3])
        for name in ("cost_delay", "cost_delay_closed", "prefix_max_sum", "earliest_argmax_counts"):
            assert getattr(_kernels_c, name)(g, d) == getattr(_kernels_py, name)(g, d), name


def test_earliest_argmax_prefers_left(kernels):
    # over-budget values (3, 3, 2, 1): index 0 and 1 tie, the earliest wins
    assert kernels.earliest_argmax_counts([3, 4, 4, 4], 1.0) == [4, 0, 0, 0]
    assert kernels.earliest_argmax_counts([1, 3, 5], 1.0) == [1, 1, 1]


def test_prefix_max_sum(kernels):
    assert kernels.prefix_max_sum([4, 4, 4, 4, 5], 1.0) == 20.0
    assert kernels.prefix_max_sum([], 1.0) == 0.0
