"""
Minimum optimal frequency and power-minimizing core count.

The minimum frequency on m processors has the closed form :func:`psi` once
the staircase step of every task is known at that frequency.
:func:`minimum_optimal_frequency` finds these steps by binary search with
O(n log m) calls to :func:`~skmalleable.analysis.feasible`.

"""

import logging
import math
from typing import List, Optional, Tuple, Union

import numpy as np

from skmalleable._functions import _first_true
from skmalleable.analysis import _check_cores, feasible, frequency_bracket, m_of_system
from skmalleable.exceptions import NoFeasibleConfigurationError, NonPositiveDenominatorError
from skmalleable.objects import FrequencyPlan, KappaVector, PowerModel, TaskSystem
from skmalleable.power import quantize_frequency
from skmalleable.typing import array_like

logger = logging.getLogger(__name__)

_SETTLE_STEPS = 64

BASELINE_MODES = ('strict', 'paper')

TABLE_MODES = ('exact', 'enumerate')


def psi(tau: TaskSystem, m: int, kappas: Union[KappaVector, array_like]) -> float:
    r"""
    Return the frequency at which the system needs exactly m processors, given one staircase step per task.

    .. math::

        \Psi = \frac{\sum_i u_i / (\gamma_{i,\kappa_i+1} - \gamma_{i,\kappa_i})}
        {m - \sum_i (\kappa_i - \gamma_{i,\kappa_i} / (\gamma_{i,\kappa_i+1} - \gamma_{i,\kappa_i}))}

    Both sums are evaluated left to right.

    Parameters
    ----------
    tau : TaskSystem
        Input task system.
    m : int
        Number of processors.
    kappas : array_like
        One integer per task, in [0, m - 1].

    Returns
    -------
    float
        The frequency.

    Raises
    ------
    ValueError
        If the number of entries does not match the system or an entry is outside [0, m - 1].
    NonPositiveDenominatorError
        If the steps are inconsistent with m processors.

    Examples
    --------
    >>> from skmalleable.objects import Task, TaskSystem
    >>> from skmalleable.optimizer import psi

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> psi(tau, 3, [2, 0])
    0.9375

    >>> psi(TaskSystem([Task(1, 2, [1.0])]), 1, [0])
    0.5

    >>> psi(tau, 3, [3, 0])
    Traceback (most recent call last):
    ...
    ValueError: The steps must be between 0 and m - 1.

    """
    kappas = kappas if isinstance(kappas, KappaVector) else KappaVector(kappas)

    if kappas.size != len(tau):
        raise ValueError("The steps must have one entry per task.")

    if not kappas.in_range(min(m, tau.n_cores)):
        raise ValueError("The steps must be between 0 and m - 1.")

    rows = np.arange(len(tau))
    indices = kappas.to_array()

    gamma_k = tau.gammas[rows, indices]
    gaps = tau.gammas[rows, indices + 1] - gamma_k

    numerator = sum((tau.utilizations / gaps).tolist())
    denominator = m - sum((indices - gamma_k / gaps).tolist())

    if denominator <= 0:
        raise NonPositiveDenominatorError(f"The denominator of psi must be positive, got {denominator}.")

    return numerator / denominator


def minimum_optimal_frequency(
    tau: TaskSystem, m: int, return_kappas: bool = False
) -> Union[float, Tuple[float, KappaVector]]:
    """
    Return the smallest frequency at which the system is feasible on m processors.

    For each task, the step kappa_i is m - 1 if the system is feasible at
    u_i / gamma_{i,m}. Otherwise it is the smallest kappa such that the system
    is not feasible at u_i / gamma_{i,kappa+1}, found by binary search.
    The frequency is then psi evaluated at these steps.

    When rounding leaves M_tau(psi) a few ulps above m, the frequency is
    advanced to the next float until the feasibility condition holds.

    Parameters
    ----------
    tau : TaskSystem
        Input task system.
    m : int
        Number of processors, between 1 and the speedup capacity.
    return_kappas : bool, optional
        If True, also return the steps (default False).

    Returns
    -------
    float
        The minimum optimal frequency.
    KappaVector, optional
        The staircase step of every task.

    Examples
    --------
    >>> from skmalleable.objects import Task, TaskSystem
    >>> from skmalleable.optimizer import minimum_optimal_frequency

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> minimum_optimal_frequency(tau, 3)
    0.9375

    >>> minimum_optimal_frequency(tau, 3, return_kappas=True)
    (0.9375, KappaVector([2, 0]))

    >>> minimum_optimal_frequency(TaskSystem([Task(1, 2, [1.0])]), 1)
    0.5

    """
    _check_cores(tau, m)

    thresholds = tau.jump_frequencies[:, :m]
    kappas = []

    for i, threshold in enumerate(thresholds):

        if feasible(tau, m, threshold[m - 1]):
            kappa = m - 1
        else:
            kappa = _first_true(lambda j: not feasible(tau, m, threshold[j]), 0, m - 1)

        logger.debug("Task %d: step %d on %d processors.", i, kappa, m)
        kappas.append(kappa)

    kappa_vector = KappaVector(kappas)
    frequency = _settle(tau, m, psi(tau, m, kappa_vector))

    if return_kappas:
        return frequency, kappa_vector

    return frequency


def bisect_minimum_frequency(tau: TaskSystem, m: int, n_iter: int = 200) -> float:
    """
    Return the minimum feasible frequency by bisection over :func:`~skmalleable.analysis.feasible`.

    The bracket is [max_i u_i / gamma_{i,m}, sum_i u_i / gamma_{i,1}].

    Examples
    --------
    >>> from skmalleable.objects import Task, TaskSystem
    >>> from skmalleable.optimizer import bisect_minimum_frequency

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> round(bisect_minimum_frequency(tau, 3), 12)
    0.9375

    """
    low, high = frequency_bracket(tau, m)

    if feasible(tau, m, low):
        return low

    while not feasible(tau, m, high):
        high *= 2

    for _ in range(n_iter):

        middle = 0.5 * (low + high)

        if middle in (low, high):
            break

        if feasible(tau, m, middle):
            high = middle
        else:
            low = middle

    return high


def nonparallel_min_frequency(tau: TaskSystem, m: int, mode: str = 'strict') -> float:
    """
    Return the minimum frequency of an optimal scheduler whose jobs run on one processor at a time.

    Parameters
    ----------
    tau : TaskSystem
        Input task system.
    m : int
        Number of processors.
    mode : {'strict', 'paper'}, optional
        'paper' returns U / m. 'strict' also requires every task to fit on one
        processor and returns max(U / m, max_i u_i) (default).

    Examples
    --------
    >>> from skmalleable.objects import Task, TaskSystem
    >>> from skmalleable.optimizer import nonparallel_min_frequency

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> nonparallel_min_frequency(tau, 3, mode='paper')
    0.75

    >>> nonparallel_min_frequency(tau, 3)
    1.5

    """
    if m < 1:
        raise ValueError("The number of processors must be positive.")

    if mode not in BASELINE_MODES:
        raise ValueError(f"The baseline mode must be one of {BASELINE_MODES}.")

    frequency = tau.total_utilization / m

    if mode == 'strict':
        frequency = max(frequency, float(tau.utilizations.max()))

    return frequency


def frequency_table(
    tau: TaskSystem, power: PowerModel, m_max: Optional[int] = None, mode: str = 'exact'
) -> List[FrequencyPlan]:
    """
    Return the minimum-power discrete frequency of every number of active cores.

    Parameters
    ----------
    tau : TaskSystem
        Input task system.
    power : PowerModel
        Power rates of the platform.
    m_max : int, optional
        Largest number of active cores (default is the capacity of both the system and the power model).
    mode : {'exact', 'enumerate'}, optional
        'exact' rounds the minimum optimal frequency up to the next discrete
        frequency (default). 'enumerate' tests every discrete frequency and
        keeps the feasible one with the lowest power.

    Returns
    -------
    list of FrequencyPlan
        One plan per core count l = 1, ..., m_max. Unattainable rows have no quantized frequency.

    Raises
    ------
    ValueError
        If m_max exceeds the capacity of the system or of the power model, or the mode is unknown.

    Examples
    --------
    >>> from skmalleable.objects import PowerModel, Task, TaskSystem
    >>> from skmalleable.optimizer import frequency_table

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])
    >>> power = PowerModel(
    ...     [0.8, 0.9375, 1.0, 2.0, 3.0],
    ...     [[k * f ** 3 + 1 for k in (1, 2, 3)] for f in [0.8, 0.9375, 1.0, 2.0, 3.0]],
    ...     reference_frequency=1.0,
    ... )

    >>> [plan.f_quantized for plan in frequency_table(tau, power)]
    [3.0, 2.0, 0.9375]

    >>> [plan.f_quantized for plan in frequency_table(tau, power, mode='enumerate')]
    [3.0, 2.0, 0.9375]

    """
    if mode not in TABLE_MODES:
        raise ValueError(f"The mode must be one of {TABLE_MODES}.")

    m_max = _check_m_max(tau, power, m_max)
    table = []

    for active_cores in range(1, m_max + 1):

        if mode == 'exact':
            table.append(_exact_row(tau, power, active_cores))
        else:
            table.append(_enumerated_row(tau, power, active_cores))

        logger.debug("%d cores: %s", active_cores, table[-1])

    return table


def optimize(
    tau: TaskSystem, power: PowerModel, m_max: Optional[int] = None
) -> Tuple[FrequencyPlan, List[FrequencyPlan]]:
    """
    Return the (active cores, frequency) pair with the minimum power, and the row of every core count.

    For each l = 1, ..., m_max the minimum optimal frequency is rounded up to
    the next discrete frequency of the power model. Ties in power go to fewer
    cores, then to the lower frequency.

    Parameters
    ----------
    tau : TaskSystem
        Input task system.
    power : PowerModel
        Power rates of the platform.
    m_max : int, optional
        Largest number of active cores (default is the capacity of both the system and the power model).

    Returns
    -------
    FrequencyPlan
        The chosen plan.
    list of FrequencyPlan
        One plan per core count. Unattainable rows have no quantized frequency.

    Raises
    ------
    ValueError
        If m_max exceeds the capacity of the system or of the power model.
    NoFeasibleConfigurationError
        If no core count is attainable at the top frequency.

    Examples
    --------
    >>> from skmalleable.objects import PowerModel, Task, TaskSystem
    >>> from skmalleable.optimizer import optimize

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])
    >>> power = PowerModel(
    ...     [0.8, 0.9375, 1.0, 2.0, 3.0],
    ...     [[k * f ** 3 + 1 for k in (1, 2, 3)] for f in [0.8, 0.9375, 1.0, 2.0, 3.0]],
    ...     reference_frequency=1.0,
    ... )

    >>> plan, table = optimize(tau, power)

    >>> table[2].f_quantized
    0.9375

    >>> plan.active_cores, plan.f_quantized
    (3, 0.9375)

    """
    table = frequency_table(tau, power, m_max, mode='exact')

    return _select(table), table


def optimize_discrete(
    tau: TaskSystem, power: PowerModel, m_max: Optional[int] = None
) -> Tuple[FrequencyPlan, List[FrequencyPlan]]:
    """
    Return the minimum-power feasible pair by testing every (discrete frequency, active cores) pair.

    Unlike :func:`optimize`, the result is optimal even when the power rates
    are not non-decreasing in the frequency.

    Returns
    -------
    FrequencyPlan
        The chosen plan.
    list of FrequencyPlan
        The minimum-power feasible frequency of every core count.

    Examples
    --------
    >>> from skmalleable.objects import PowerModel, Task, TaskSystem
    >>> from skmalleable.optimizer import optimize_discrete

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])
    >>> power = PowerModel(
    ...     [0.8, 0.9375, 1.0, 2.0, 3.0],
    ...     [[k * f ** 3 + 1 for k in (1, 2, 3)] for f in [0.8, 0.9375, 1.0, 2.0, 3.0]],
    ...     reference_frequency=1.0,
    ... )

    >>> plan, _ = optimize_discrete(tau, power)

    >>> plan.active_cores, plan.f_quantized
    (3, 0.9375)

    """
    table = frequency_table(tau, power, m_max, mode='enumerate')

    return _select(table), table


def _exact_row(tau: TaskSystem, power: PowerModel, active_cores: int) -> FrequencyPlan:

    frequency = minimum_optimal_frequency(tau, active_cores)
    quantized = quantize_frequency(frequency, power)
    watts = None if quantized is None else power.watts_at(quantized, active_cores)

    return FrequencyPlan(active_cores, frequency, quantized, watts)


def _enumerated_row(tau: TaskSystem, power: PowerModel, active_cores: int) -> FrequencyPlan:

    candidates = [
        (power.watts_at(frequency, active_cores), frequency)
        for frequency, normalized in zip(power.frequencies.tolist(), power.normalized_frequencies.tolist())
        if feasible(tau, active_cores, normalized)
    ]

    if not candidates:
        return FrequencyPlan(active_cores, None, None, None)

    watts, frequency = min(candidates)

    return FrequencyPlan(active_cores, None, frequency, watts)


def _select(table: List[FrequencyPlan]) -> FrequencyPlan:
    """Return the attainable plan with the minimum power, then fewer cores, then lower frequency."""
    attainable = [plan for plan in table if plan.attainable]

    if not attainable:
        raise NoFeasibleConfigurationError("No number of active cores is feasible at the top frequency.")

    return min(attainable, key=lambda plan: (plan.power_watts, plan.active_cores, plan.f_quantized))


def _settle(tau: TaskSystem, m: int, frequency: float) -> float:

    for _ in range(_SETTLE_STEPS):

        if m_of_system(tau, frequency, n_cores=m) <= m:
            return frequency

        frequency = float(np.nextafter(frequency, math.inf))

    logger.warning("The minimum frequency %r did not settle on %d processors.", frequency, m)

    return frequency


def _check_m_max(tau: TaskSystem, power: PowerModel, m_max: Optional[int]) -> int:

    capacity = min(tau.n_cores, power.n_cores)
    m_max = capacity if m_max is None else m_max

    if not 1 <= m_max <= capacity:
        raise ValueError("The number of active cores must be covered by the task system and the power model.")

    return m_max
