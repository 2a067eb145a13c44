"""
Frequency-parametric schedulability analysis of malleable gang task systems.

A task needs more than k processors at frequency f exactly when u < gamma_k * f
does not hold, i.e. when f < u / gamma_k. All staircase decisions compare
the frequency with the jump frequencies u / gamma_k stored on each task, so
the endpoints returned by :func:`k_inverse` classify exactly as documented.

"""

import math
from typing import Optional, Tuple

import numpy as np

from skmalleable.objects import FrequencyInterval, ProcessorRequirement, Task, TaskSystem


def k_of_f(task: Task, f: float) -> int:
    """
    Return k_i(f), the number of processors the task needs permanently at frequency f.

    The task is schedulable on k_i(f) + 1 processors. The value is found by
    binary search over the m jump frequencies.

    Parameters
    ----------
    task : Task
        Input task.
    f : float
        Normalized frequency.

    Returns
    -------
    int
        Value in [0, m]. The value m means the task cannot be scheduled on m processors at f.

    Raises
    ------
    ValueError
        If the frequency is not positive.

    Examples
    --------
    >>> from skmalleable.analysis import k_of_f
    >>> from skmalleable.objects import Task

    >>> task = Task(6, 4, [1.0, 1.5, 2.0])

    >>> k_of_f(task, 1.0)
    1

    >>> k_of_f(task, 0.9375)
    2

    >>> k_of_f(task, 1.5)
    0

    >>> k_of_f(task, 0.5)
    3

    """
    _check_frequency(f)

    # The jump frequencies decrease, so their negatives are sorted for searchsorted.
    return int(np.searchsorted(-task.jump_frequencies, -f, side='left'))


def k_inverse(task: Task, kappa: int) -> FrequencyInterval:
    """
    Return the interval of frequencies where k_i(f) equals kappa.

    Parameters
    ----------
    task : Task
        Input task.
    kappa : int
        Number of processors, in [0, m].

    Returns
    -------
    FrequencyInterval
        [u / gamma_1, inf) for kappa = 0, [u / gamma_{kappa+1}, u / gamma_kappa) for 0 < kappa < m,
        and (0, u / gamma_m) for kappa = m.

    Raises
    ------
    ValueError
        If kappa is outside [0, m].

    Examples
    --------
    >>> from skmalleable.analysis import k_inverse
    >>> from skmalleable.objects import Task

    >>> task = Task(6, 4, [1.0, 1.5, 2.0])

    >>> k_inverse(task, 0)
    FrequencyInterval(f1=1.5, f2=inf, left_open=False)

    >>> k_inverse(task, 2)
    FrequencyInterval(f1=0.75, f2=1.0, left_open=False)

    >>> k_inverse(task, 3)
    FrequencyInterval(f1=0.0, f2=0.75, left_open=True)

    """
    n_cores = task.n_cores

    if not 0 <= kappa <= n_cores:
        raise ValueError("The number of processors must be between 0 and m.")

    jumps = task.jump_frequencies

    if kappa == 0:
        return FrequencyInterval(float(jumps[0]), math.inf)

    if kappa == n_cores:
        return FrequencyInterval(0.0, float(jumps[-1]), left_open=True)

    return FrequencyInterval(float(jumps[kappa]), float(jumps[kappa - 1]))


def m_of_task(task: Task, f: float, n_cores: Optional[int] = None) -> ProcessorRequirement:
    """
    Return M_i(f), the fractional number of processors the task needs at frequency f.

    Parameters
    ----------
    task : Task
        Input task.
    f : float
        Normalized frequency.
    n_cores : int, optional
        Number of available processors m (default is the speedup capacity).

    Returns
    -------
    ProcessorRequirement
        k_i(f) plus the share of one additional processor.
        If k_i(f) >= m, the requirement holds m processors and is flagged infeasible.

    Examples
    --------
    >>> from skmalleable.analysis import m_of_task
    >>> from skmalleable.objects import Task

    >>> task_1 = Task(6, 4, [1.0, 1.5, 2.0])
    >>> task_2 = Task(3, 4, [1.0, 1.2, 1.3])

    >>> m_of_task(task_1, 1.0)
    ProcessorRequirement(kappa=1, fractional=1.0, feasible=True)

    >>> m_of_task(task_2, 1.0).m_i
    0.75

    >>> m_of_task(task_1, 0.5)
    ProcessorRequirement(kappa=3, fractional=0.0, feasible=False)

    """
    n_cores = task.n_cores if n_cores is None else n_cores
    kappa = k_of_f(task, f)

    if kappa >= n_cores:
        return ProcessorRequirement(n_cores, 0.0, feasible=False)

    return ProcessorRequirement(kappa, _fraction(task, f, kappa))


def m_of_task_at(task: Task, f: float, kappa: int) -> float:
    """
    Return M_i(f, kappa): the processor requirement evaluated on a fixed staircase step.

    M_i(f) equals M_i(f, k_i(f)).

    Examples
    --------
    >>> from skmalleable.analysis import m_of_task_at
    >>> from skmalleable.objects import Task

    >>> task = Task(6, 4, [1.0, 1.5, 2.0])

    At a jump frequency, both adjacent steps give the same requirement.

    >>> m_of_task_at(task, 1.0, 1), m_of_task_at(task, 1.0, 2)
    (2.0, 2.0)

    """
    _check_frequency(f)

    if not 0 <= kappa < task.n_cores:
        raise ValueError("The number of processors must be between 0 and m - 1.")

    return kappa + (task.utilization - task.speedup.gamma(kappa) * f) / (
        (task.speedup.gamma(kappa + 1) - task.speedup.gamma(kappa)) * f
    )


def m_of_system(tau: TaskSystem, f: float, n_cores: Optional[int] = None) -> float:
    """
    Return M_tau(f), the fractional number of processors the system needs at frequency f.

    Parameters
    ----------
    tau : TaskSystem
        Input task system.
    f : float
        Normalized frequency.
    n_cores : int, optional
        Number of available processors m (default is the speedup capacity).

    Returns
    -------
    float
        Sum of the task requirements, or infinity if some task needs more than m processors.

    Examples
    --------
    >>> from skmalleable.analysis import m_of_system
    >>> from skmalleable.objects import Task, TaskSystem

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> m_of_system(tau, 1.0)
    2.75

    >>> m_of_system(tau, 0.9375)
    3.0

    >>> m_of_system(tau, 0.5)
    inf

    """
    n_cores = tau.n_cores if n_cores is None else n_cores
    kappas, fractions = _requirements(tau, f)

    if kappas.max() >= n_cores:
        return math.inf

    return math.fsum(kappas + fractions)


def feasible(tau: TaskSystem, m: int, f: float) -> bool:
    """
    Check if the system is feasible on m processors at frequency f.

    The test is necessary and sufficient: m >= M_tau(f).

    Parameters
    ----------
    tau : TaskSystem
        Input task system.
    m : int
        Number of processors, between 1 and the speedup capacity.
    f : float
        Normalized frequency.

    Returns
    -------
    bool
        True if the system is feasible.

    Raises
    ------
    ValueError
        If m is outside [1, capacity] or the frequency is not positive.

    Examples
    --------
    >>> from skmalleable.analysis import feasible
    >>> from skmalleable.objects import Task, TaskSystem

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> feasible(tau, 3, 1.0), feasible(tau, 3, 0.9375), feasible(tau, 3, 0.9)
    (True, True, False)

    >>> feasible(tau, 2, 1.0)
    False

    """
    _check_cores(tau, m)

    return m >= m_of_system(tau, f, n_cores=m)


def min_processors(tau: TaskSystem, f: float) -> Optional[int]:
    """
    Return the minimum number of processors that schedules the system at frequency f.

    Returns None if no number of processors up to the speedup capacity is enough.

    Examples
    --------
    >>> from skmalleable.analysis import min_processors
    >>> from skmalleable.objects import Task, TaskSystem

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> min_processors(tau, 1.0)
    3

    >>> min_processors(tau, 2.0)
    2

    """
    requirement = m_of_system(tau, f)

    if requirement > tau.n_cores:
        return None

    return max(1, math.ceil(requirement))


def scale_system(tau: TaskSystem, f: float) -> TaskSystem:
    """
    Return the system whose speedup factors are multiplied by the frequency f.

    The input system is feasible at f if and only if the result is feasible at frequency 1.

    Examples
    --------
    >>> from skmalleable.analysis import feasible, scale_system
    >>> from skmalleable.objects import Task, TaskSystem

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])
    >>> tau_scaled = scale_system(tau, 0.9375)

    >>> tau_scaled[0].speedup
    SpeedupVector([0.9375 , 1.40625, 1.875  ])

    >>> feasible(tau_scaled, 3, 1.0)
    True

    """
    _check_frequency(f)

    return TaskSystem([Task(task.e, task.p, task.speedup.scale(f)) for task in tau])


def frequency_bracket(tau: TaskSystem, m: int) -> Tuple[float, float]:
    """
    Return frequencies (lower, upper) that bracket the minimum feasible frequency on m processors.

    Below `lower` some task needs more than m processors. At `upper` every
    task fits on one processor and M_tau equals one.

    Examples
    --------
    >>> from skmalleable.analysis import frequency_bracket
    >>> from skmalleable.objects import Task, TaskSystem

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> frequency_bracket(tau, 3)
    (0.75, 2.25)

    """
    _check_cores(tau, m)

    lower = float(tau.jump_frequencies[:, m - 1].max())
    upper = math.fsum(tau.jump_frequencies[:, 0])

    return lower, upper


def _requirements(tau: TaskSystem, f: float) -> Tuple[np.ndarray, np.ndarray]:
    """Return the arrays of k_i(f) and of the additional-processor shares for all tasks."""
    _check_frequency(f)

    kappas = np.count_nonzero(tau.jump_frequencies > f, axis=1)

    rows = np.arange(len(tau))
    gamma_k = tau.gammas[rows, kappas]
    gamma_next = tau.gammas[rows, kappas + 1]

    with np.errstate(invalid='ignore'):
        fractions = (tau.utilizations - gamma_k * f) / ((gamma_next - gamma_k) * f)

    # The share is zero on the infinite sentinel step; rounding may leave it a few ulps below zero.
    fractions = np.where(np.isfinite(gamma_next), np.maximum(fractions, 0.0), 0.0)

    return kappas, fractions


def _fraction(task: Task, f: float, kappa: int) -> float:

    gamma_k = task.speedup.gamma(kappa)
    gamma_next = task.speedup.gamma(kappa + 1)

    return max(0.0, (task.utilization - gamma_k * f) / ((gamma_next - gamma_k) * f))


def _check_frequency(f: float) -> None:

    if not f > 0:
        raise ValueError("The frequency must be positive.")


def _check_cores(tau: TaskSystem, m: int) -> None:

    if not 1 <= m <= tau.n_cores:
        raise ValueError("The number of processors must be between 1 and the speedup capacity.")
