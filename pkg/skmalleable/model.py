"""Validation, construction and serialization of malleable task systems."""

import logging
from numbers import Integral, Real
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import yaml

from skmalleable._functions import _round_significant
from skmalleable.exceptions import TaskFileError, ValidationError
from skmalleable.objects import SpeedupVector, Task, TaskSystem
from skmalleable.typing import array_like

logger = logging.getLogger(__name__)


def validate_speedup(gammas: array_like, strict: bool = True) -> SpeedupVector:
    """
    Validate a list of speedup factors against every model restriction.

    The factors must be strictly increasing, the ratio of two factors must
    lie strictly between 1 and the ratio of processor counts, and the
    marginal speedup of each added processor must not increase.
    All pairs of processor counts are checked.

    Parameters
    ----------
    gammas : array_like
        Speedup factors for 1, 2, ..., m processors.
    strict : bool, optional
        If False, a speedup ratio equal to the processor-count ratio is accepted (default True).

    Returns
    -------
    SpeedupVector
        The validated factors.

    Raises
    ------
    NotIncreasingError
        If the factors are not positive and strictly increasing.
    SubLinearityError
        If a speedup ratio is out of range. The offending pair is in the `pair` attribute.
    WorkLimitError
        If a marginal speedup increases. The offending pair is in the `pair` attribute.

    Examples
    --------
    >>> from skmalleable.model import validate_speedup

    >>> validate_speedup([1.0, 1.2, 1.3])
    SpeedupVector([1. , 1.2, 1.3])

    >>> validate_speedup([1.0, 2.0])
    Traceback (most recent call last):
    ...
    skmalleable.exceptions.SubLinearityError: The speedup ratio for processor counts (1, 2) must be below 2.0.

    >>> validate_speedup([1.0, 2.0], strict=False)
    SpeedupVector([1., 2.])

    """
    return SpeedupVector(gammas, strict=strict)


def amdahl_speedup(parallel_fraction: float, n_cores: int) -> SpeedupVector:
    """
    Return the Amdahl's-law speedup factors 1 / ((1 - p) + p / k) for k = 1, ..., m.

    Parameters
    ----------
    parallel_fraction : float
        Parallel fraction p of the work, strictly between 0 and 1.
    n_cores : int
        Number of processors m.

    Raises
    ------
    ValueError
        If the fraction is not strictly between 0 and 1, or m is not positive.

    Examples
    --------
    >>> import numpy as np
    >>> from skmalleable.model import amdahl_speedup

    >>> amdahl_speedup(0.5, 2)
    SpeedupVector([1.        , 1.33333333])

    >>> np.round(amdahl_speedup(0.9, 4).to_array(), 4)
    array([1.    , 1.8182, 2.5   , 3.0769])

    """
    if not 0 < parallel_fraction < 1:
        raise ValueError("The parallel fraction must be strictly between 0 and 1.")

    if n_cores < 1:
        raise ValueError("The number of processors must be positive.")

    counts = np.arange(1, n_cores + 1)

    return SpeedupVector(1 / ((1 - parallel_fraction) + parallel_fraction / counts))


def load_tasks(document: Union[str, Dict[str, Any]]) -> TaskSystem:
    """
    Load a task system from a task document.

    The document maps `tasks` to a list of mappings with the keys `e`
    (execution time), `p` (integer period) and `speedup` (list of factors).

    Parameters
    ----------
    document : {str, dict}
        YAML text, or the document already parsed.

    Returns
    -------
    TaskSystem
        The validated task system.

    Raises
    ------
    TaskFileError
        If the text is not YAML or the document does not follow the schema.
    ValidationError
        If a speedup vector violates a model restriction.

    Examples
    --------
    >>> from skmalleable.model import load_tasks

    >>> text = '''
    ... tasks:
    ... - {e: 6, p: 4, speedup: [1.0, 1.5, 2.0]}
    ... - {e: 3, p: 4, speedup: [1.0, 1.2, 1.3]}
    ... '''

    >>> load_tasks(text).utilizations
    array([1.5 , 0.75])

    >>> load_tasks({'tasks': []})
    Traceback (most recent call last):
    ...
    skmalleable.exceptions.TaskFileError: The document must contain a non-empty list of tasks.

    """
    if isinstance(document, str):
        try:
            document = yaml.safe_load(document)
        except yaml.YAMLError as error:
            raise TaskFileError(f"The task document is not valid YAML: {error}") from error

    if not isinstance(document, dict) or not isinstance(document.get('tasks'), list) or not document['tasks']:
        raise TaskFileError("The document must contain a non-empty list of tasks.")

    tasks = []

    for index, entry in enumerate(document['tasks']):

        if not isinstance(entry, dict) or set(entry) != {'e', 'p', 'speedup'}:
            raise TaskFileError(f"Task {index} must have exactly the keys e, p and speedup.")

        e, p, speedup = entry['e'], entry['p'], entry['speedup']

        if isinstance(e, bool) or not isinstance(e, Real):
            raise TaskFileError(f"The execution time of task {index} must be a number.")

        if isinstance(p, bool) or not isinstance(p, Integral):
            raise TaskFileError(f"The period of task {index} must be an integer.")

        if not isinstance(speedup, list) or not all(
            isinstance(gamma, Real) and not isinstance(gamma, bool) for gamma in speedup
        ):
            raise TaskFileError(f"The speedup of task {index} must be a list of numbers.")

        try:
            tasks.append(Task(e, p, speedup))
        except ValidationError:
            raise
        except ValueError as error:
            raise TaskFileError(f"Task {index}: {error}") from error

    try:
        tau = TaskSystem(tasks)
    except ValueError as error:
        raise TaskFileError(str(error)) from error

    logger.debug("Loaded %d tasks with speedup capacity %d.", len(tau), tau.n_cores)

    return tau


def save_tasks(tau: TaskSystem) -> str:
    """
    Serialize a task system to its canonical task document.

    Keys appear in the order e, p, speedup and reals keep 12 significant digits,
    so saving a loaded canonical document reproduces it byte for byte.

    Examples
    --------
    >>> from skmalleable.model import save_tasks
    >>> from skmalleable.objects import Task, TaskSystem

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> print(save_tasks(tau), end='')
    tasks:
    - e: 6.0
      p: 4
      speedup: [1.0, 1.5, 2.0]
    - e: 3.0
      p: 4
      speedup: [1.0, 1.2, 1.3]

    """
    document = {
        'tasks': [
            {
                'e': _round_significant(task.e),
                'p': task.p,
                'speedup': [_round_significant(float(gamma)) for gamma in task.speedup],
            }
            for task in tau
        ]
    }

    return yaml.safe_dump(document, sort_keys=False, default_flow_style=None)


def read_tasks(path: Union[str, Path]) -> TaskSystem:
    """Load a task system from a task file."""
    return load_tasks(Path(path).read_text())


def write_tasks(tau: TaskSystem, path: Union[str, Path]) -> None:
    """Write the canonical task document of a task system to a file."""
    Path(path).write_text(save_tasks(tau))
