"""Module for the Task and TaskSystem classes."""

import math
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from skmalleable._functions import _lcm
from skmalleable.objects.speedup import SpeedupVector
from skmalleable.typing import array_like


class Task:
    """
    An implicit-deadline sporadic task with malleable parallel jobs.

    Parameters
    ----------
    e : float
        Worst-case execution time, in work units at frequency 1 on one processor.
    p : int
        Period, which is also the relative deadline.
    speedup : array_like
        Speedup factors for 1, 2, ..., m processors.
        Converted to a :class:`SpeedupVector` if necessary.

    Attributes
    ----------
    e : float
        Worst-case execution time.
    p : int
        Period and relative deadline.
    speedup : SpeedupVector
        Validated speedup factors.
    utilization : float
        e / p.
    jump_frequencies : ndarray
        Decreasing (m,) array of u / gamma_k. The task needs more than k
        processors exactly at the frequencies below entry k - 1.

    Raises
    ------
    ValueError
        If the execution time is not positive or the period is not a positive integer.

    Examples
    --------
    >>> from skmalleable.objects import Task

    >>> task = Task(6, 4, [1.0, 1.5, 2.0])

    >>> task
    Task(e=6.0, p=4, speedup=SpeedupVector([1. , 1.5, 2. ]))

    >>> task.utilization
    1.5

    >>> task.jump_frequencies
    array([1.5 , 1.  , 0.75])

    >>> Task(6, 4.5, [1.0])
    Traceback (most recent call last):
    ...
    ValueError: The period must be a positive integer.

    """

    def __init__(self, e: float, p: int, speedup: Union[SpeedupVector, array_like]):

        if not (math.isfinite(e) and e > 0):
            raise ValueError("The execution time must be positive.")

        if not (float(p).is_integer() and p > 0):
            raise ValueError("The period must be a positive integer.")

        self.e = float(e)
        self.p = int(p)
        self.speedup = speedup if isinstance(speedup, SpeedupVector) else SpeedupVector(speedup)

        self.utilization = self.e / self.p

        jump_frequencies = self.utilization / self.speedup.to_array()
        jump_frequencies.flags.writeable = False
        self.jump_frequencies = jump_frequencies

    @classmethod
    def from_utilization(cls, u: float, p: int, speedup: Union[SpeedupVector, array_like]) -> 'Task':
        """
        Instantiate a task from its utilization and period.

        Examples
        --------
        >>> from skmalleable.objects import Task

        >>> Task.from_utilization(0.75, 4, [1.0, 1.2, 1.3])
        Task(e=3.0, p=4, speedup=SpeedupVector([1. , 1.2, 1.3]))

        """
        return cls(u * p, p, speedup)

    def __repr__(self) -> str:

        repr_speedup = np.array_repr(self.speedup)

        return f"Task(e={self.e}, p={self.p}, speedup={repr_speedup})"

    @property
    def deadline(self) -> int:

        return self.p

    @property
    def n_cores(self) -> int:

        return self.speedup.n_cores

    def min_frequency(self, n_cores: Optional[int] = None) -> float:
        """
        Return u / gamma_m, below which the task cannot be scheduled on m processors.

        Parameters
        ----------
        n_cores : int, optional
            Number of processors m (default is the speedup capacity).

        Examples
        --------
        >>> from skmalleable.objects import Task

        >>> task = Task(6, 4, [1.0, 1.5, 2.0])

        >>> task.min_frequency()
        0.75

        >>> task.min_frequency(1)
        1.5

        >>> task.min_frequency(0)
        Traceback (most recent call last):
        ...
        ValueError: The number of processors must be between 1 and the capacity.

        """
        n_cores = self.n_cores if n_cores is None else n_cores

        if not 1 <= n_cores <= self.n_cores:
            raise ValueError("The number of processors must be between 1 and the capacity.")

        return float(self.jump_frequencies[n_cores - 1])

    def is_close(self, other: 'Task', **kwargs: float) -> bool:
        """
        Check if the task is almost equivalent to another task.

        Parameters
        ----------
        other : Task
            Other task.
        kwargs : dict, optional
            Additional keywords passed to :func:`math.isclose`.

        Returns
        -------
        bool
            True if the periods are equal, and the execution times and speedup factors are close.

        """
        return (
            self.p == other.p
            and math.isclose(self.e, other.e, **kwargs)
            and self.speedup.is_close(other.speedup, **kwargs)
        )


class TaskSystem:
    """
    A sporadic task system: a non-empty collection of tasks sharing one speedup capacity.

    Parameters
    ----------
    tasks : sequence of Task
        The tasks of the system.

    Attributes
    ----------
    tasks : tuple of Task
        The tasks of the system.
    n_cores : int
        Speedup-vector capacity shared by all tasks.
    utilizations : ndarray
        (n,) array of task utilizations.
    periods : ndarray
        (n,) array of task periods.
    total_utilization : float
        Sum of the task utilizations.

    Raises
    ------
    ValueError
        If there are no tasks, or the speedup vectors have different lengths.

    Examples
    --------
    >>> from skmalleable.objects import Task, TaskSystem

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> len(tau), tau.n_cores
    (2, 3)

    >>> tau.utilizations
    array([1.5 , 0.75])

    >>> tau.total_utilization
    2.25

    >>> TaskSystem([])
    Traceback (most recent call last):
    ...
    ValueError: The task system must contain at least one task.

    >>> TaskSystem([Task(6, 4, [1.0, 1.5]), Task(3, 4, [1.0, 1.2, 1.3])])
    Traceback (most recent call last):
    ...
    ValueError: The speedup vectors must all have the same length.

    """

    def __init__(self, tasks: Sequence[Task]):

        if len(tasks) == 0:
            raise ValueError("The task system must contain at least one task.")

        if len({task.n_cores for task in tasks}) != 1:
            raise ValueError("The speedup vectors must all have the same length.")

        self.tasks = tuple(tasks)
        self.n_cores = self.tasks[0].n_cores

        self.utilizations = _read_only(np.array([task.utilization for task in self.tasks]))
        self.periods = _read_only(np.array([task.p for task in self.tasks]))
        self.total_utilization = math.fsum(self.utilizations)

        # Row i holds gamma_{i,0} = 0, gamma_{i,1}, ..., gamma_{i,m}, gamma_{i,m+1} = inf.
        self.gammas = _read_only(np.vstack([task.speedup.with_sentinels() for task in self.tasks]))
        self.jump_frequencies = _read_only(np.vstack([task.jump_frequencies for task in self.tasks]))

    def __repr__(self) -> str:

        repr_tasks = ", ".join(repr(task) for task in self.tasks)

        return f"TaskSystem([{repr_tasks}])"

    def __len__(self) -> int:

        return len(self.tasks)

    def __iter__(self) -> Iterator[Task]:

        return iter(self.tasks)

    def __getitem__(self, index: int) -> Task:

        return self.tasks[index]

    def hyperperiod(self) -> int:
        """
        Return the least common multiple of the periods.

        Examples
        --------
        >>> from skmalleable.objects import Task, TaskSystem

        >>> TaskSystem([Task(1, 4, [1.0]), Task(1, 6, [1.0])]).hyperperiod()
        12

        """
        return _lcm(task.p for task in self.tasks)

    def is_close(self, other: 'TaskSystem', **kwargs: float) -> bool:
        """
        Check if every task is almost equivalent to the task at the same position of another system.

        Parameters
        ----------
        other : TaskSystem
            Other task system.
        kwargs : dict, optional
            Additional keywords passed to :func:`math.isclose`.

        Returns
        -------
        bool
            True if the systems have the same length and their tasks are close.

        """
        if len(self) != len(other):
            return False

        return all(task.is_close(task_other, **kwargs) for task, task_other in zip(self, other))


def _read_only(array: np.ndarray) -> np.ndarray:

    array.flags.writeable = False

    return array
