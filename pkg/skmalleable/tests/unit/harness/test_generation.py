import math

import numpy as np
import pytest
from numpy.random import PCG64, Generator

from skmalleable.exceptions import GenerationExhaustedError
from skmalleable.harness.generation import (
    GenSpec,
    speedup_vector,
    uunifast,
    uunifast_discard_max,
    uunifast_discard_max_utilizations,
)
from skmalleable.model import amdahl_speedup


@pytest.mark.parametrize(
    "kwargs, message_expected",
    [
        (dict(n=0, U_target=1.0), "The number of tasks must be positive."),
        (dict(n=2, U_target=0.0), "The total utilization must be positive."),
        (dict(n=2, U_target=1.0, u_cap=0.0), "The utilization cap must be positive."),
        (dict(n=2, U_target=1.0, period_range=(0, 10)), "The period range must satisfy"),
        (dict(n=2, U_target=1.0, period_range=(10, 5)), "The period range must satisfy"),
        (dict(n=2, U_target=1.0, discard_budget=0), "The discard budget must be positive."),
        (dict(n=2, U_target=1.0, speedup_source='linear'), "The speedup source must be"),
        (dict(n=2, U_target=3.0, u_cap=1.0), "The total utilization 3.0 exceeds 2 times the cap 1.0."),
        (dict(n=2, U_target=1.0, U_max=1.5), "The maximum utilization must be positive and at most"),
        (dict(n=2, U_target=1.0, U_max=-0.5), "The maximum utilization must be positive and at most"),
        (dict(n=3, U_target=2.0, U_max=1.2, u_cap=1.0), "The maximum utilization must not exceed the cap."),
        (dict(n=1, U_target=0.7, U_max=0.5), "A single task must have the total utilization."),
        (dict(n=2, U_target=1.0, U_max=1.0), "The maximum utilization must leave utilization for the other tasks."),
        (dict(n=3, U_target=4.0, U_max=0.8, u_cap=1.0), "The remaining utilization 3.2 cannot be placed on 2 tasks"),
    ],
)
def test_gen_spec_failure(kwargs, message_expected):

    with pytest.raises(ValueError, match=message_expected):
        GenSpec(**kwargs)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=8, U_target=4.0, U_max=0.8),
        dict(n=8, U_target=4.0, U_max=0.8, u_cap=0.8),
        dict(n=1, U_target=0.7, U_max=0.7),
        dict(n=4, U_target=4.0, u_cap=1.0),
        dict(n=3, U_target=2.0, U_max=1.2),
    ],
)
def test_gen_spec(kwargs):

    assert GenSpec(**kwargs).n == kwargs['n']


@pytest.mark.parametrize(
    "source, n_cores, gammas_expected",
    [
        ('amdahl:0.5', 2, amdahl_speedup(0.5, 2)),
        ('amdahl:0.9', 8, amdahl_speedup(0.9, 8)),
        ('cpu-bound', 4, amdahl_speedup(0.95, 4)),
        ('io-bound', 4, amdahl_speedup(0.7, 4)),
    ],
)
def test_speedup_vector(source, n_cores, gammas_expected):

    assert speedup_vector(source, n_cores).is_close(gammas_expected)


@pytest.mark.parametrize(
    "source, message_expected",
    [
        ('amdahl', "The speedup source must be"),
        ('amdahl:', "The speedup source must be"),
        ('linear:0.5', "The speedup source must be"),
        ('amdahl:half', "The Amdahl parallel fraction must be a number"),
        ('amdahl:1.5', "The parallel fraction must be strictly between 0 and 1."),
    ],
)
def test_speedup_vector_failure(source, message_expected):

    with pytest.raises(ValueError, match=message_expected):
        speedup_vector(source, 4)


@pytest.mark.parametrize("n, total", [(1, 0.7), (2, 1.0), (5, 2.0), (8, 4.0)])
def test_uunifast(n, total):

    utilizations = uunifast(n, total, np.random.default_rng(n))

    assert utilizations.shape == (n,)
    assert np.all(utilizations >= 0)
    assert math.isclose(math.fsum(utilizations), total)


def test_uunifast_failure():

    with pytest.raises(ValueError):
        uunifast(0, 1.0, np.random.default_rng(0))


def test_discard_max_utilizations_classic():

    spec = GenSpec(n=4, U_target=2.0, u_cap=0.9)
    utilizations = uunifast_discard_max_utilizations(spec, Generator(PCG64(5)))

    assert utilizations.shape == (4,)
    assert np.all(utilizations <= 0.9)
    assert math.isclose(math.fsum(utilizations), 2.0)


def test_discard_max_utilizations_exhausted():

    # Three utilizations at most 1 that sum to 2.99 are very unlikely.
    spec = GenSpec(n=3, U_target=2.99, u_cap=1.0, discard_budget=5)

    with pytest.raises(GenerationExhaustedError, match="No utilization vector below the cap 1.0 within 5 draws."):
        uunifast_discard_max_utilizations(spec, Generator(PCG64(0)))


def test_uunifast_discard_max():

    spec = GenSpec(n=8, U_target=4.0, U_max=0.8, seed=7, period_range=(10, 20), speedup_source='io-bound', n_cores=4)
    tau = uunifast_discard_max(spec)

    assert len(tau) == 8
    assert tau.n_cores == 4
    assert math.isclose(tau.total_utilization, 4.0)
    assert math.isclose(tau.utilizations[0], 0.8)
    assert np.all((tau.periods >= 10) & (tau.periods <= 20))

    for task in tau:
        assert task.speedup.is_close(amdahl_speedup(0.7, 4))


def test_uunifast_discard_max_seed():

    spec = GenSpec(n=8, U_target=4.0, U_max=0.8, seed=7)

    assert uunifast_discard_max(spec).is_close(uunifast_discard_max(spec))
    assert not uunifast_discard_max(spec).is_close(uunifast_discard_max(GenSpec(n=8, U_target=4.0, U_max=0.8, seed=8)))

    # An explicit generator replaces the seed of the GenSpec.
    tau = uunifast_discard_max(spec, Generator(PCG64(7)))

    assert tau.is_close(uunifast_discard_max(spec))


def test_uunifast_discard_max_single_task():

    tau = uunifast_discard_max(GenSpec(n=1, U_target=0.7, U_max=0.7, period_range=(5, 5)))

    assert tau.utilizations.tolist() == [0.7]
    assert tau.periods.tolist() == [5]
