import math

import numpy as np
import pytest
from numpy.random import PCG64, Generator

from skmalleable.harness.generation import GenSpec, uunifast, uunifast_discard_max_utilizations

N_DRAWS = 100_000


def _uunifast_loop(n, total, rng):
    """UUnifast written as the sequential recurrence on the remaining sum."""
    utilizations = []
    remaining = total

    for i in range(1, n):

        following = remaining * rng.random() ** (1 / (n - i))
        utilizations.append(remaining - following)
        remaining = following

    utilizations.append(remaining)

    return utilizations


@pytest.mark.parametrize("u_max", [0.4, 0.8, 1.2])
def test_discard_max_invariants(u_max):

    spec = GenSpec(n=8, U_target=4.0, U_max=u_max, u_cap=1.6)
    rng = Generator(PCG64(11))

    for _ in range(10_000):

        utilizations = uunifast_discard_max_utilizations(spec, rng)

        assert math.isclose(math.fsum(utilizations), 4.0, abs_tol=1e-9)
        assert np.all(utilizations <= 1.6)
        assert np.all(utilizations >= 0)
        assert utilizations[0] == u_max


@pytest.mark.parametrize("index", [0, 1, 3])
def test_uunifast_marginal_mean(index):
    """The vectorized draw and the sequential recurrence agree on the mean of a marginal."""
    n, total = 5, 2.0

    rng = np.random.default_rng(3)
    vectorized = np.array([uunifast(n, total, rng)[index] for _ in range(N_DRAWS)])

    rng = np.random.default_rng(4)
    sequential = np.array([_uunifast_loop(n, total, rng)[index] for _ in range(N_DRAWS)])

    standard_error = math.sqrt((vectorized.var() + sequential.var()) / N_DRAWS)

    assert abs(vectorized.mean() - sequential.mean()) < 4 * standard_error

    # Uniform on the simplex: every marginal has mean total / n.
    assert abs(vectorized.mean() - total / n) < 4 * math.sqrt(vectorized.var() / N_DRAWS)
