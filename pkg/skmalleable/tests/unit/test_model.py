import numpy as np
import pytest

from skmalleable.exceptions import NotIncreasingError, SubLinearityError, TaskFileError, WorkLimitError
from skmalleable.model import amdahl_speedup, load_tasks, read_tasks, save_tasks, validate_speedup, write_tasks
from skmalleable.objects import Task, TaskSystem

CANONICAL = """\
tasks:
- e: 6.0
  p: 4
  speedup: [1.0, 1.5, 2.0]
- e: 3.0
  p: 4
  speedup: [1.0, 1.2, 1.3]
"""


@pytest.mark.parametrize(
    "gammas, error_expected",
    [
        ([1.0, 1.5, 2.0], None),
        ([1.0, 1.2, 1.3], None),
        ([1.0, 0.5], NotIncreasingError),
        ([1.0, 2.0], SubLinearityError),
        ([1.0, 1.3, 1.7], WorkLimitError),
    ],
)
def test_validate_speedup(gammas, error_expected):

    if error_expected is None:
        assert validate_speedup(gammas).is_equal(gammas)
    else:
        with pytest.raises(error_expected):
            validate_speedup(gammas)


@pytest.mark.parametrize(
    "parallel_fraction, n_cores, gammas_expected",
    [
        (0.5, 1, [1.0]),
        (0.5, 2, [1.0, 4 / 3]),
        (0.9, 4, [1.0, 1 / 0.55, 2.5, 1 / 0.325]),
        (0.99, 3, [1.0, 1 / 0.505, 1 / 0.34]),
    ],
)
def test_amdahl_speedup(parallel_fraction, n_cores, gammas_expected):

    speedup = amdahl_speedup(parallel_fraction, n_cores)

    assert speedup.n_cores == n_cores
    assert np.allclose(speedup, gammas_expected)


@pytest.mark.parametrize("parallel_fraction, n_cores", [(0.0, 2), (1.0, 2), (-0.5, 2), (0.5, 0)])
def test_amdahl_speedup_failure(parallel_fraction, n_cores):

    with pytest.raises(ValueError):
        amdahl_speedup(parallel_fraction, n_cores)


def test_load_tasks():

    tau = load_tasks(CANONICAL)

    assert tau.is_close(TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])]))


def test_load_tasks_dict():

    tau = load_tasks({'tasks': [{'e': 1, 'p': 2, 'speedup': [1.0]}]})

    assert tau.utilizations.tolist() == [0.5]


@pytest.mark.parametrize(
    "document, message_expected",
    [
        ("", "The document must contain a non-empty list of tasks."),
        ("tasks: []", "The document must contain a non-empty list of tasks."),
        ("tasks: 3", "The document must contain a non-empty list of tasks."),
        ("- {e: 1, p: 2, speedup: [1.0]}", "The document must contain a non-empty list of tasks."),
        ("tasks: [{e: 1, p: 2}]", "Task 0 must have exactly the keys e, p and speedup."),
        ("tasks: [{e: 1, p: 2, speedup: [1.0], d: 2}]", "Task 0 must have exactly the keys e, p and speedup."),
        ("tasks: [{e: one, p: 2, speedup: [1.0]}]", "The execution time of task 0 must be a number."),
        ("tasks: [{e: true, p: 2, speedup: [1.0]}]", "The execution time of task 0 must be a number."),
        ("tasks: [{e: 1, p: 2.5, speedup: [1.0]}]", "The period of task 0 must be an integer."),
        ("tasks: [{e: 1, p: 2, speedup: 1.0}]", "The speedup of task 0 must be a list of numbers."),
        ("tasks: [{e: 1, p: 2, speedup: [1.0, x]}]", "The speedup of task 0 must be a list of numbers."),
        ("tasks: [{e: 1, p: 2, speedup: [1.0]}, {e: -1, p: 2, speedup: [1.0]}]", "Task 1: The execution time"),
        ("tasks: [{e: 1, p: 0, speedup: [1.0]}]", "Task 0: The period must be a positive integer."),
        (
            "tasks: [{e: 1, p: 2, speedup: [1.0]}, {e: 1, p: 2, speedup: [1.0, 1.5]}]",
            "The speedup vectors must all have the same length.",
        ),
    ],
)
def test_load_tasks_schema_failure(document, message_expected):

    with pytest.raises(TaskFileError, match=message_expected):
        load_tasks(document)


@pytest.mark.parametrize("document", ["tasks: [", "tasks: [{e: 6, p: 4, speedup: [1.0, 1.5", "tasks: {e: 1"])
def test_load_tasks_yaml_failure(document):

    with pytest.raises(TaskFileError, match="The task document is not valid YAML") as error:
        load_tasks(document)

    # The parser reports the position of the problem.
    assert "line " in str(error.value)


def test_load_tasks_restriction_failure():

    with pytest.raises(SubLinearityError) as error:
        load_tasks("tasks: [{e: 1, p: 2, speedup: [1.0, 1.5, 3.0]}]")

    assert error.value.pair == (1, 3)


def test_save_tasks_canonical():

    assert save_tasks(load_tasks(CANONICAL)) == CANONICAL


def test_save_tasks_rounding():

    tau = TaskSystem([Task.from_utilization(0.1, 3, amdahl_speedup(0.9, 2))])

    # 0.1 * 3 is 0.30000000000000004 and 1 / 0.55 has 17 significant digits.
    assert save_tasks(tau) == "tasks:\n- e: 0.3\n  p: 3\n  speedup: [1.0, 1.81818181818]\n"


def test_read_write_tasks(tmp_path):

    path = tmp_path / 'tasks.yaml'
    tau = load_tasks(CANONICAL)

    write_tasks(tau, path)

    assert path.read_text() == CANONICAL
    assert read_tasks(path).is_close(tau)
    assert read_tasks(str(path)).is_close(tau)
