"""Module for the FrequencyInterval and ProcessorRequirement classes."""

from dataclasses import dataclass


@dataclass(frozen=True)
class FrequencyInterval:
    """
    A half-open range of normalized frequencies [f1, f2).

    Parameters
    ----------
    f1 : float
        Left endpoint, inclusive unless `left_open` is True.
    f2 : float
        Right endpoint, exclusive; may be infinite.
    left_open : bool, optional
        True when the left endpoint is excluded (the interval (0, f2) of the
        m-processor staircase step).

    Raises
    ------
    ValueError
        If the endpoints do not satisfy 0 <= f1 < f2, or f1 = 0 on a closed endpoint.

    Examples
    --------
    >>> from skmalleable.objects import FrequencyInterval

    >>> interval = FrequencyInterval(0.75, 1.0)

    >>> interval.contains(0.75), interval.contains(1.0)
    (True, False)

    >>> FrequencyInterval(1.0, 0.5)
    Traceback (most recent call last):
    ...
    ValueError: The endpoints must satisfy 0 < f1 < f2.

    """

    f1: float
    f2: float
    left_open: bool = False

    def __post_init__(self) -> None:

        if not (0 <= self.f1 < self.f2) or (self.f1 == 0 and not self.left_open):
            raise ValueError("The endpoints must satisfy 0 < f1 < f2.")

    def contains(self, f: float) -> bool:
        """Check if the interval contains a frequency."""
        above_left = self.f1 < f if self.left_open else self.f1 <= f

        return above_left and f < self.f2

    @property
    def width(self) -> float:

        return self.f2 - self.f1


@dataclass(frozen=True)
class ProcessorRequirement:
    """
    Processor demand of one task at one frequency.

    The demand is `kappa` processors held for all time plus the fraction
    `fractional` of one more processor.

    Parameters
    ----------
    kappa : int
        Number of processors the task needs permanently, k_i(f).
    fractional : float
        Share of the additional processor.
    feasible : bool, optional
        False when the task needs more processors than are available (default True).

    Examples
    --------
    >>> from skmalleable.objects import ProcessorRequirement

    >>> requirement = ProcessorRequirement(1, 1.0)

    >>> requirement.m_i
    2.0

    An infeasible task holds all m processors and still misses its deadlines.

    >>> ProcessorRequirement(3, 0.0, feasible=False).m_i
    3.0

    """

    kappa: int
    fractional: float
    feasible: bool = True

    def __post_init__(self) -> None:

        if self.kappa < 0 or self.fractional < 0:
            raise ValueError("The processor requirement must not be negative.")

    @property
    def m_i(self) -> float:
        """Return kappa + fractional, the value of M_i(f)."""
        return float(self.kappa + self.fractional)
