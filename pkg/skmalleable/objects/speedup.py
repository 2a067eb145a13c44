"""Module for the SpeedupVector class."""

import math

import numpy as np

from skmalleable.exceptions import NotIncreasingError, SubLinearityError, WorkLimitError
from skmalleable.objects._base_array import _BaseVector
from skmalleable.typing import array_like


class SpeedupVector(_BaseVector):
    r"""
    Multiprocessor speedup factors of a parallel task, implemented as a 1D array.

    Entry k - 1 holds :math:`\gamma_k`, the execution rate of a job running on
    k processors simultaneously, relative to one processor at frequency 1.
    The sentinels :math:`\gamma_0 = 0` and :math:`\gamma_{m+1} = \infty` are
    implicit and available through :meth:`gamma`.

    The array is a read-only subclass of :class:`numpy.ndarray`.

    Parameters
    ----------
    gammas : array_like
        Speedup factors for 1, 2, ..., m processors.
    strict : bool, optional
        If False, a ratio equal to the processor-count ratio is accepted
        (default True). The other restrictions are always strict.

    Attributes
    ----------
    n_cores : int
        Processor-count capacity m.

    Raises
    ------
    NotIncreasingError
        If the factors are not positive and strictly increasing.
    SubLinearityError
        If some ratio :math:`\gamma_{j'} / \gamma_j` is not strictly between 1 and j'/j.
    WorkLimitError
        If some marginal speedup exceeds an earlier marginal speedup.

    Examples
    --------
    >>> from skmalleable.objects import SpeedupVector

    >>> speedup = SpeedupVector([1.0, 1.5, 2.0])

    >>> speedup
    SpeedupVector([1. , 1.5, 2. ])

    >>> speedup.n_cores
    3

    >>> SpeedupVector([1.0, 2.0])
    Traceback (most recent call last):
    ...
    skmalleable.exceptions.SubLinearityError: The speedup ratio for processor counts (1, 2) must be below 2.0.

    >>> SpeedupVector([1.0, 1.3, 1.7])
    Traceback (most recent call last):
    ...
    skmalleable.exceptions.WorkLimitError: The marginal speedup of processor 3 must not exceed that of processor 2.

    """

    def __new__(cls, gammas: array_like, strict: bool = True) -> 'SpeedupVector':

        obj = super().__new__(cls, gammas)

        _check_increasing(obj)
        _check_sub_linear(obj, strict)
        _check_work_limited(obj)

        return obj

    @property
    def n_cores(self) -> int:

        return self.size

    def gamma(self, k: int) -> float:
        """
        Return the speedup factor for k processors, sentinels included.

        Parameters
        ----------
        k : int
            Number of processors, from 0 to m + 1.

        Returns
        -------
        float
            Zero for k = 0, infinity for k = m + 1.

        Raises
        ------
        ValueError
            If k is outside [0, m + 1].

        Examples
        --------
        >>> from skmalleable.objects import SpeedupVector

        >>> speedup = SpeedupVector([1.0, 1.5, 2.0])

        >>> speedup.gamma(0), speedup.gamma(2), speedup.gamma(4)
        (0.0, 1.5, inf)

        """
        if not 0 <= k <= self.n_cores + 1:
            raise ValueError("The number of processors must be between 0 and m + 1.")

        if k == 0:
            return 0.0

        if k == self.n_cores + 1:
            return math.inf

        return float(self[k - 1])

    def with_sentinels(self) -> np.ndarray:
        """
        Return the factors with both sentinels, as a regular array of length m + 2.

        Examples
        --------
        >>> from skmalleable.objects import SpeedupVector

        >>> SpeedupVector([1.0, 1.5]).with_sentinels()
        array([0. , 1. , 1.5, inf])

        """
        return np.concatenate(([0.0], self.to_array(), [math.inf]))

    def truncate(self, n_cores: int) -> 'SpeedupVector':
        """
        Return the speedup factors for at most `n_cores` processors.

        Every prefix of a valid vector satisfies the same restrictions.

        Examples
        --------
        >>> from skmalleable.objects import SpeedupVector

        >>> SpeedupVector([1.0, 1.5, 2.0]).truncate(2)
        SpeedupVector([1. , 1.5])

        """
        if not 1 <= n_cores <= self.n_cores:
            raise ValueError("The number of processors must be between 1 and the capacity.")

        return SpeedupVector(self[:n_cores], strict=False)

    def scale(self, factor: float) -> 'SpeedupVector':
        """
        Return the factors multiplied by a positive frequency.

        Ratios are scale-invariant, so the result is validated with the same rules.

        Examples
        --------
        >>> from skmalleable.objects import SpeedupVector

        >>> SpeedupVector([1.0, 1.5, 2.0]).scale(0.5)
        SpeedupVector([0.5 , 0.75, 1.  ])

        """
        if factor <= 0:
            raise ValueError("The scaling frequency must be positive.")

        return SpeedupVector(self.to_array() * factor)


def _check_increasing(gammas: np.ndarray) -> None:

    if gammas[0] <= 0:
        raise NotIncreasingError("The speedup factors must be positive.")

    if not np.all(np.diff(gammas) > 0):
        raise NotIncreasingError("The speedup factors must be strictly increasing.")


def _check_sub_linear(gammas: np.ndarray, strict: bool) -> None:
    """Check 1 < g[j'] / g[j] < j' / j for every pair j < j'."""
    counts = np.arange(1, gammas.size + 1)

    ratios = np.divide.outer(gammas, gammas).T
    bounds = np.divide.outer(counts, counts).T

    above = ratios >= bounds if strict else ratios > bounds
    violations = np.triu((ratios <= 1) | above, k=1)

    if violations.any():
        j, j_prime = (int(index) + 1 for index in np.argwhere(violations)[0])
        raise SubLinearityError(
            f"The speedup ratio for processor counts ({j}, {j_prime}) must be below {j_prime / j}.", (j, j_prime)
        )


def _check_work_limited(gammas: np.ndarray) -> None:
    """Check g[j'+1] - g[j'] <= g[j+1] - g[j] for every pair j < j' < m, with g[0] = 0."""
    marginals = np.diff(gammas, prepend=0.0)

    # Row j, column j' compares the marginal of processor j' + 1 against processor j + 1.
    violations = np.triu(np.subtract.outer(marginals, marginals).T > 0, k=1)

    if violations.any():
        j, j_prime = (int(index) for index in np.argwhere(violations)[0])
        raise WorkLimitError(
            f"The marginal speedup of processor {j_prime + 1} must not exceed that of processor {j + 1}.",
            (j, j_prime),
        )
