"""Module for the KappaVector and FrequencyPlan classes."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from skmalleable.objects._base_array import _BaseVector
from skmalleable.typing import array_like


class KappaVector(_BaseVector):
    """
    One staircase step per task: the number of processors each task holds permanently.

    Parameters
    ----------
    kappas : array_like
        Non-negative integers, one per task.

    Raises
    ------
    ValueError
        If an entry is negative or not an integer.

    Examples
    --------
    >>> from skmalleable.objects import KappaVector

    >>> KappaVector([2, 0])
    KappaVector([2, 0])

    >>> KappaVector([1.5])
    Traceback (most recent call last):
    ...
    ValueError: The entries must be non-negative integers.

    """

    _dtype = int

    def __new__(cls, kappas: array_like) -> 'KappaVector':

        values = np.asarray(kappas, dtype=float)

        if values.size and not (np.all(values >= 0) and np.all(np.mod(values, 1) == 0)):
            raise ValueError("The entries must be non-negative integers.")

        return super().__new__(cls, kappas)

    def in_range(self, n_cores: int) -> bool:
        """
        Check if every entry lies in [0, n_cores - 1].

        Examples
        --------
        >>> from skmalleable.objects import KappaVector

        >>> KappaVector([2, 0]).in_range(3), KappaVector([2, 0]).in_range(2)
        (True, False)

        """
        return bool(self.max() < n_cores)


@dataclass(frozen=True)
class FrequencyPlan:
    """
    One combination of active cores and frequency, with its predicted power.

    Parameters
    ----------
    active_cores : int
        Number of active cores l.
    f_min_continuous : float, optional
        Minimum feasible normalized frequency on l cores. None when the plan
        comes from enumeration over the discrete frequencies only.
    f_quantized : float, optional
        Physical frequency of the power model used on l cores, or None when
        no discrete frequency is high enough.
    power_watts : float, optional
        P(f_quantized, l), or None when the plan is unattainable.

    Examples
    --------
    >>> from skmalleable.objects import FrequencyPlan

    >>> plan = FrequencyPlan(3, 0.9375, 1.5, 42.0)

    >>> plan.attainable
    True

    >>> FrequencyPlan(1, None, None, None).attainable
    False

    """

    active_cores: int
    f_min_continuous: Optional[float]
    f_quantized: Optional[float]
    power_watts: Optional[float]

    def __post_init__(self) -> None:

        if self.active_cores < 1:
            raise ValueError("The number of active cores must be positive.")

        if (self.f_quantized is None) != (self.power_watts is None):
            raise ValueError("The quantized frequency and the power must both be set or both be None.")

    @property
    def attainable(self) -> bool:

        return self.f_quantized is not None
