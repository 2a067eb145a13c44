"""
Random generation of malleable task systems.

Utilizations come from UUnifast-Discard-Max: the first task is pinned at a
given utilization U_max, and the remaining mass is split over the other
tasks by the UUnifast recurrence. A vector with any utilization above the
cap is discarded whole and drawn again.

"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numpy.random import PCG64, Generator

from skmalleable.exceptions import GenerationExhaustedError
from skmalleable.model import amdahl_speedup
from skmalleable.objects import SpeedupVector, Task, TaskSystem

logger = logging.getLogger(__name__)

# Built-in speedup sources, as Amdahl parallel fractions.
NAMED_SPEEDUPS = {'cpu-bound': 0.95, 'io-bound': 0.7}


@dataclass(frozen=True)
class GenSpec:
    """
    Parameters of a random task system.

    Parameters
    ----------
    n : int
        Number of tasks.
    U_target : float
        Total utilization.
    U_max : float, optional
        Utilization of the first task. If None, all n utilizations are drawn (classic UUnifast-Discard).
    u_cap : float, optional
        Ceiling of every drawn utilization, which may exceed one (default is no ceiling).
    seed : int, optional
        Seed of the generator (default 0).
    period_range : tuple of int, optional
        Inclusive range of the integer periods (default (10, 100)).
    speedup_source : str, optional
        'amdahl:<p>', 'cpu-bound' or 'io-bound' (default 'amdahl:0.9').
    n_cores : int, optional
        Length of the speedup vectors (default 8).
    discard_budget : int, optional
        Number of discarded vectors before giving up (default 10000).

    Raises
    ------
    ValueError
        If the parameters admit no task system.

    Examples
    --------
    >>> from skmalleable.harness.generation import GenSpec

    >>> GenSpec(n=8, U_target=4.0, U_max=0.8).period_range
    (10, 100)

    >>> GenSpec(n=3, U_target=4.0, U_max=0.8, u_cap=1.0)
    Traceback (most recent call last):
    ...
    ValueError: The remaining utilization 3.2 cannot be placed on 2 tasks below the cap 1.0.

    """

    n: int
    U_target: float
    U_max: Optional[float] = None
    u_cap: Optional[float] = None
    seed: int = 0
    period_range: Tuple[int, int] = (10, 100)
    speedup_source: str = 'amdahl:0.9'
    n_cores: int = 8
    discard_budget: int = 10000

    def __post_init__(self):

        if self.n < 1:
            raise ValueError("The number of tasks must be positive.")

        if not self.U_target > 0:
            raise ValueError("The total utilization must be positive.")

        if self.u_cap is not None and not self.u_cap > 0:
            raise ValueError("The utilization cap must be positive.")

        low, high = self.period_range

        if not 1 <= low <= high:
            raise ValueError("The period range must satisfy 1 <= low <= high.")

        if self.discard_budget < 1:
            raise ValueError("The discard budget must be positive.")

        speedup_vector(self.speedup_source, self.n_cores)

        cap = math.inf if self.u_cap is None else self.u_cap

        if self.U_max is None:

            if self.U_target > self.n * cap:
                raise ValueError(f"The total utilization {self.U_target} exceeds {self.n} times the cap {cap}.")

            return

        if not 0 < self.U_max <= self.U_target:
            raise ValueError("The maximum utilization must be positive and at most the total utilization.")

        if self.U_max > cap:
            raise ValueError("The maximum utilization must not exceed the cap.")

        if self.n == 1 and not math.isclose(self.U_max, self.U_target):
            raise ValueError("A single task must have the total utilization.")

        if self.n > 1 and not self.U_max < self.U_target:
            raise ValueError("The maximum utilization must leave utilization for the other tasks.")

        remaining = self.U_target - self.U_max

        if remaining > (self.n - 1) * cap:
            raise ValueError(
                f"The remaining utilization {remaining:.12g} cannot be placed on {self.n - 1} tasks below the cap {cap}."
            )


def speedup_vector(source: str, n_cores: int) -> SpeedupVector:
    """
    Return the speedup vector named by a source string.

    Examples
    --------
    >>> from skmalleable.harness.generation import speedup_vector

    >>> speedup_vector('amdahl:0.5', 2)
    SpeedupVector([1.        , 1.33333333])

    >>> speedup_vector('cpu-bound', 1)
    SpeedupVector([1.])

    >>> speedup_vector('linear', 2)
    Traceback (most recent call last):
    ...
    ValueError: The speedup source must be 'amdahl:<p>', 'cpu-bound' or 'io-bound', got 'linear'.

    """
    if source in NAMED_SPEEDUPS:
        return amdahl_speedup(NAMED_SPEEDUPS[source], n_cores)

    name, _, parameter = source.partition(':')

    if name == 'amdahl' and parameter:

        try:
            parallel_fraction = float(parameter)
        except ValueError as error:
            raise ValueError(f"The Amdahl parallel fraction must be a number, got {parameter!r}.") from error

        return amdahl_speedup(parallel_fraction, n_cores)

    raise ValueError(f"The speedup source must be 'amdahl:<p>', 'cpu-bound' or 'io-bound', got {source!r}.")


def uunifast(n: int, total: float, rng: Generator) -> np.ndarray:
    """
    Return n utilizations that sum to a total, uniformly distributed on the simplex.

    Parameters
    ----------
    n : int
        Number of utilizations.
    total : float
        Their sum.
    rng : Generator
        Source of randomness.

    Returns
    -------
    ndarray
        (n,) array of non-negative utilizations.

    Examples
    --------
    >>> import numpy as np
    >>> from skmalleable.harness.generation import uunifast

    >>> utilizations = uunifast(5, 2.0, np.random.default_rng(0))

    >>> utilizations.shape, round(float(utilizations.sum()), 12)
    ((5,), 2.0)

    """
    if n < 1:
        raise ValueError("The number of utilizations must be positive.")

    # Remaining sums s_1 > s_2 > ... > s_{n-1}, with s_k = s_{k-1} * r_k^(1 / (n - k)).
    exponents = 1 / np.arange(n - 1, 0, -1)
    sums = total * np.cumprod(rng.random(n - 1) ** exponents)

    bounds = np.concatenate(([total], sums, [0.0]))

    return bounds[:-1] - bounds[1:]


def uunifast_discard_max_utilizations(spec: GenSpec, rng: Generator) -> np.ndarray:
    """
    Return the utilization vector of a random task system.

    Raises
    ------
    GenerationExhaustedError
        If every vector drawn within the discard budget exceeds the cap.

    """
    cap = math.inf if spec.u_cap is None else spec.u_cap

    if spec.U_max is None:
        pinned, n_free, remaining = [], spec.n, spec.U_target
    else:
        pinned, n_free, remaining = [spec.U_max], spec.n - 1, spec.U_target - spec.U_max

    if n_free == 0:
        return np.array(pinned)

    for n_discarded in range(spec.discard_budget):

        free = uunifast(n_free, remaining, rng)

        if np.all(free <= cap):

            if n_discarded:
                logger.debug("Discarded %d utilization vectors above the cap %r.", n_discarded, cap)

            return np.concatenate((pinned, free))

    raise GenerationExhaustedError(
        f"No utilization vector below the cap {cap} within {spec.discard_budget} draws."
    )


def uunifast_discard_max(spec: GenSpec, rng: Optional[Generator] = None) -> TaskSystem:
    """
    Return a random task system.

    The first task has utilization U_max and the others share U_target - U_max.
    Periods are drawn uniformly from the integers of the period range, each
    execution time is u_i * p_i, and every task gets the same speedup vector.

    Parameters
    ----------
    spec : GenSpec
        Parameters of the system.
    rng : Generator, optional
        Source of randomness (default is a PCG64 generator seeded by `spec.seed`).

    Returns
    -------
    TaskSystem
        The random system.

    Raises
    ------
    GenerationExhaustedError
        If the discard budget runs out.

    Examples
    --------
    >>> from skmalleable.harness.generation import GenSpec, uunifast_discard_max

    >>> spec = GenSpec(n=8, U_target=4.0, U_max=0.8, seed=7)
    >>> tau = uunifast_discard_max(spec)

    >>> len(tau), round(tau.total_utilization, 9), round(float(tau.utilizations[0]), 12)
    (8, 4.0, 0.8)

    >>> tau.is_close(uunifast_discard_max(spec))
    True

    >>> uunifast_discard_max(GenSpec(n=1, U_target=0.7, U_max=0.7)).utilizations
    array([0.7])

    """
    rng = Generator(PCG64(spec.seed)) if rng is None else rng

    utilizations = uunifast_discard_max_utilizations(spec, rng)

    low, high = spec.period_range
    periods = rng.integers(low, high, size=spec.n, endpoint=True)

    speedup = speedup_vector(spec.speedup_source, spec.n_cores)

    tasks = [Task.from_utilization(u, p, speedup) for u, p in zip(utilizations.tolist(), periods.tolist())]

    return TaskSystem(tasks)
