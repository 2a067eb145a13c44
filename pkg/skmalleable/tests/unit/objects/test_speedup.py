import math

import numpy as np
import pytest

from skmalleable.exceptions import NotIncreasingError, SubLinearityError, WorkLimitError
from skmalleable.objects import SpeedupVector


@pytest.mark.parametrize(
    "gammas",
    [
        [1.0],
        [0.5],
        [1.0, 1.5, 2.0],
        [1.0, 1.2, 1.3],
        [1.0, 1.9, 2.0],
        [1.0, 1.8, 2.5, 3.0],
    ],
)
def test_valid(gammas):

    speedup = SpeedupVector(gammas)

    assert speedup.n_cores == len(gammas)
    assert speedup.is_equal(gammas)


@pytest.mark.parametrize(
    "gammas, error_expected",
    [
        ([0.0, 1.0], NotIncreasingError),
        ([-1.0], NotIncreasingError),
        ([1.0, 1.0], NotIncreasingError),
        ([1.0, 0.9], NotIncreasingError),
        # The ratio must be strictly below the ratio of processor counts.
        ([1.0, 2.0], SubLinearityError),
        ([1.0, 2.5], SubLinearityError),
        ([1.0, 1.5, 3.0], SubLinearityError),
        # The third processor adds more than the second.
        ([1.0, 1.3, 1.7], WorkLimitError),
        ([1.0, 1.5, 1.6, 1.8], WorkLimitError),
    ],
)
def test_failure(gammas, error_expected):

    with pytest.raises(error_expected):
        SpeedupVector(gammas)


@pytest.mark.parametrize(
    "gammas, pair_expected",
    [
        ([1.0, 2.0], (1, 2)),
        ([1.0, 1.5, 3.0], (1, 3)),
    ],
)
def test_sub_linearity_pair(gammas, pair_expected):

    with pytest.raises(SubLinearityError) as error:
        SpeedupVector(gammas)

    assert error.value.pair == pair_expected


def test_work_limit_message():

    message = "The marginal speedup of processor 3 must not exceed that of processor 2."

    with pytest.raises(WorkLimitError, match=message) as error:
        SpeedupVector([1.0, 1.3, 1.7])

    assert error.value.pair == (1, 2)


@pytest.mark.parametrize(
    "gammas, strict, error_expected",
    [
        ([1.0, 2.0], True, SubLinearityError),
        ([1.0, 2.0], False, None),
        ([1.0, 2.0, 3.0], False, None),
        ([1.0, 2.5], False, SubLinearityError),
    ],
)
def test_strict(gammas, strict, error_expected):

    if error_expected is None:
        assert SpeedupVector(gammas, strict=strict).n_cores == len(gammas)
    else:
        with pytest.raises(error_expected):
            SpeedupVector(gammas, strict=strict)


@pytest.mark.parametrize("array", [[], [[1.0, 1.5]], [1.0, math.inf], [math.nan]])
def test_array_failure(array):

    with pytest.raises(ValueError):
        SpeedupVector(array)


@pytest.mark.parametrize(
    "k, gamma_expected",
    [(0, 0.0), (1, 1.0), (2, 1.5), (3, 2.0), (4, math.inf)],
)
def test_gamma(k, gamma_expected):

    assert SpeedupVector([1.0, 1.5, 2.0]).gamma(k) == gamma_expected


@pytest.mark.parametrize("k", [-1, 5])
def test_gamma_failure(k):

    with pytest.raises(ValueError):
        SpeedupVector([1.0, 1.5, 2.0]).gamma(k)


def test_read_only():

    speedup = SpeedupVector([1.0, 1.5])
    gammas = [1.0, 1.5]

    with pytest.raises(ValueError):
        speedup[0] = 2.0

    # The input list is copied.
    gammas[0] = 0.1
    assert speedup[0] == 1.0


@pytest.mark.parametrize(
    "gammas, n_cores, gammas_expected",
    [
        ([1.0, 1.5, 2.0], 1, [1.0]),
        ([1.0, 1.5, 2.0], 3, [1.0, 1.5, 2.0]),
        ([1.0, 2.0, 3.0], 2, [1.0, 2.0]),
    ],
)
def test_truncate(gammas, n_cores, gammas_expected):

    assert SpeedupVector(gammas, strict=False).truncate(n_cores).is_equal(gammas_expected)


@pytest.mark.parametrize("n_cores", [0, 4])
def test_truncate_failure(n_cores):

    with pytest.raises(ValueError):
        SpeedupVector([1.0, 1.5, 2.0]).truncate(n_cores)


@pytest.mark.parametrize("factor", [0.5, 1.0, 3.7])
def test_scale(factor):

    speedup = SpeedupVector([1.0, 1.5, 2.0])

    assert speedup.scale(factor).is_close(np.array([1.0, 1.5, 2.0]) * factor)


@pytest.mark.parametrize("factor", [0.0, -1.0])
def test_scale_failure(factor):

    with pytest.raises(ValueError):
        SpeedupVector([1.0, 1.5]).scale(factor)
