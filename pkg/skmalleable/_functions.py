"""Private functions shared by the analysis modules."""

import math
from functools import reduce
from typing import Callable, Iterable, Sequence

import numpy as np


def _lcm(values: Iterable[int]) -> int:
    """Return the least common multiple of positive integers."""
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def _gcd(values: Iterable[int]) -> int:
    """Return the greatest common divisor of positive integers."""
    return reduce(math.gcd, values, 0)


def _first_true(predicate: Callable[[int], bool], low: int, high: int) -> int:
    """
    Return the smallest index in [low, high] where a monotone predicate holds.

    The predicate must be false then true over the range, and it must hold at `high`.
    It is never evaluated at `high`, so a search over N candidates costs
    at most ceil(log2(N)) evaluations.

    Examples
    --------
    >>> from skmalleable._functions import _first_true

    >>> _first_true(lambda i: i >= 3, 0, 7)
    3

    >>> _first_true(lambda i: i >= 9, 0, 7)
    7

    """
    while low < high:

        middle = (low + high) // 2

        if predicate(middle):
            high = middle
        else:
            low = middle + 1

    return low


def _round_significant(value: float, digits: int = 12) -> float:
    """
    Round a real to a number of significant digits.

    Examples
    --------
    >>> from skmalleable._functions import _round_significant

    >>> _round_significant(1 / 3)
    0.333333333333

    >>> _round_significant(6.0)
    6.0

    """
    return float(f"{value:.{digits}g}")


def _fmean(values: Sequence[float]) -> float:
    """Return the mean with an order-independent, correctly rounded sum."""
    if not values:
        return math.nan

    return math.fsum(values) / len(values)


def _fstd(values: Sequence[float]) -> float:
    """Return the population standard deviation with order-independent sums."""
    if not values:
        return math.nan

    mean = _fmean(values)

    return math.sqrt(math.fsum((x - mean) ** 2 for x in values) / len(values))


_allclose = np.vectorize(math.isclose)
