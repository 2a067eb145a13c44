import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats, integers

from skmalleable.power import (
    dvfs_comparison,
    energy_constant,
    piecewise_linear_rate,
    quantize_frequency,
    synthetic_power_model,
)
from .constants import REL_TOL
from .strategies import power_models

N_SAMPLES = 100_000


def _samples(rng):
    """Return levels, fractions and increases whose lowered level stays positive."""
    level = rng.uniform(0.1, 4.0, N_SAMPLES)
    ell = rng.uniform(0.01, 0.99, N_SAMPLES)

    # delta' = ell * delta / (1 - ell) must stay below the level.
    delta_max = 0.99 * level * (1 - ell) / ell
    delta = rng.uniform(0.0, 1.0, N_SAMPLES) * delta_max + 1e-6 * delta_max

    return level, ell, delta


def test_dynamic_energy_cubic():

    level, ell, delta = _samples(np.random.default_rng(1))

    dynamic, constant, _ = dvfs_comparison(level, ell, delta)

    assert np.all(dynamic >= constant * (1 - REL_TOL))


@pytest.mark.parametrize("seed", range(20))
def test_dynamic_energy_piecewise_linear(seed):

    rng = np.random.default_rng(100 + seed)

    n_pieces = int(rng.integers(2, 6))
    slopes = np.sort(rng.uniform(0.0, 5.0, n_pieces))
    intercepts = rng.uniform(-2.0, 2.0, n_pieces)

    level, ell, delta = _samples(rng)

    dynamic, constant, _ = dvfs_comparison(level, ell, delta, rate=piecewise_linear_rate(slopes, intercepts))

    assert np.all(dynamic >= constant - REL_TOL * np.maximum(1.0, np.abs(constant)))


@given(floats(0.1, 4.0), floats(0.01, 0.99), floats(0.01, 0.99))
def test_decrease_preserves_work(level, ell, share):

    delta_prime_target = share * level
    delta = delta_prime_target * (1 - ell) / ell

    _, _, delta_prime = dvfs_comparison(level, ell, delta)

    assert np.isclose(ell * (level + delta) + (1 - ell) * (level - delta_prime), level, rtol=1e-12)


@settings(deadline=None)
@given(integers(1, 16), floats(0.0, 50.0), floats(0.01, 2.0), floats(0.0, 5.0))
def test_synthetic_model_shape(n_cores, static, alpha, beta):

    model = synthetic_power_model(np.linspace(1.0, 3.0, 9), n_cores, static, alpha, beta, reference_frequency=1.0)

    assert model.diagnose() == []


@given(power_models(n_cores=1), floats(0.01, 6.0), floats(1.0, 3.0))
def test_quantize_frequency(power, f_norm, factor):

    normalized = power.normalized_frequencies
    quantized = quantize_frequency(f_norm, power)

    if quantized is None:
        assert f_norm > normalized[-1]
    else:
        index = power.frequencies.tolist().index(quantized)

        assert normalized[index] >= f_norm
        assert index == 0 or normalized[index - 1] < f_norm

    quantized_higher = quantize_frequency(f_norm * factor, power)

    if quantized is None:
        assert quantized_higher is None
    elif quantized_higher is not None:
        assert quantized_higher >= quantized


@given(power_models(n_cores=1))
def test_quantize_frequency_levels(power):

    levels = power.frequencies.tolist()

    for index, normalized in enumerate(power.normalized_frequencies.tolist()):

        assert quantize_frequency(normalized, power) == levels[index]

        # One ulp above a level is the next level.
        level_next = levels[index + 1] if index + 1 < len(levels) else None

        assert quantize_frequency(float(np.nextafter(normalized, np.inf)), power) == level_next


@given(floats(0.1, 4.0), floats(0.01, 100.0), floats(0.01, 100.0), floats(0.1, 10.0))
def test_energy_linear_in_duration(level, duration_a, duration_b, factor):

    energy_a = energy_constant(level, duration_a).energy
    energy_b = energy_constant(level, duration_b).energy

    assert math.isclose(energy_constant(level, duration_a + duration_b).energy, energy_a + energy_b, rel_tol=REL_TOL)
    assert math.isclose(energy_constant(level, factor * duration_a).energy, factor * energy_a, rel_tol=REL_TOL)
