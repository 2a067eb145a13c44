"""Module for the PowerModel class and its value types."""

from dataclasses import dataclass, field
from typing import List

import numpy as np
from matplotlib.axes import Axes

from skmalleable.exceptions import PowerMatrixError
from skmalleable.typing import array_like


@dataclass(frozen=True)
class PowerDiagnostic:
    """
    A shape violation of a power matrix.

    Parameters
    ----------
    kind : str
        'frequency-monotonicity', 'core-monotonicity' or 'convexity'.
    frequency : float
        Physical frequency of the offending cell.
    cores : int
        Active-core count of the offending cell.
    detail : str
        Human-readable description.

    """

    kind: str
    frequency: float
    cores: int
    detail: str


@dataclass(frozen=True)
class EnergyQuote:
    """
    Energy consumed at a constant power rate.

    Examples
    --------
    >>> from skmalleable.objects import EnergyQuote

    >>> EnergyQuote(duration=2.0, watts=1.5).energy
    3.0

    """

    duration: float
    watts: float
    energy: float = field(init=False)

    def __post_init__(self) -> None:

        object.__setattr__(self, 'energy', self.duration * self.watts)


class PowerModel:
    """
    Power dissipation rates P(f, k) over discrete frequencies and active-core counts.

    Parameters
    ----------
    frequencies : array_like
        (n_f,) strictly increasing physical frequencies.
    watts : array_like
        (n_f, m) power rates. Column k - 1 holds the rates with k active cores.
    reference_frequency : float
        Physical frequency that corresponds to the normalized frequency 1.

    Attributes
    ----------
    frequencies : ndarray
        Physical frequencies.
    watts : ndarray
        Power matrix.
    reference_frequency : float
        Physical frequency of normalized frequency 1.
    n_cores : int
        Largest active-core count covered by the matrix.

    Raises
    ------
    PowerMatrixError
        If the frequencies are not positive and strictly increasing,
        the matrix shape does not match, or some rate is not positive.

    Examples
    --------
    >>> from skmalleable.objects import PowerModel

    >>> model = PowerModel([1.0, 2.0], [[10.0, 15.0], [20.0, 30.0]], reference_frequency=2.0)

    >>> model
    PowerModel(frequencies=array([1., 2.]), n_cores=2, reference_frequency=2.0)

    >>> model.normalized_frequencies
    array([0.5, 1. ])

    >>> model.watts_at(2.0, 1)
    20.0

    >>> PowerModel([1.0, 2.0], [[10.0, 15.0], [20.0, -1.0]], reference_frequency=2.0)
    Traceback (most recent call last):
    ...
    skmalleable.exceptions.PowerMatrixError: The power rates must all be positive.

    """

    def __init__(self, frequencies: array_like, watts: array_like, reference_frequency: float):

        frequencies = np.array(frequencies, dtype=float)
        watts = np.array(watts, dtype=float)

        if frequencies.ndim != 1 or frequencies.size == 0:
            raise PowerMatrixError("The frequencies must be a non-empty 1D array.")

        if not (np.all(frequencies > 0) and np.all(np.diff(frequencies) > 0)):
            raise PowerMatrixError("The frequencies must be positive and strictly increasing.")

        if watts.ndim != 2 or watts.shape[0] != frequencies.size or watts.shape[1] == 0:
            raise PowerMatrixError("The power matrix must have one row per frequency and at least one column.")

        if not (np.all(np.isfinite(watts)) and np.all(watts > 0)):
            raise PowerMatrixError("The power rates must all be positive.")

        if not reference_frequency > 0:
            raise PowerMatrixError("The reference frequency must be positive.")

        frequencies.flags.writeable = False
        watts.flags.writeable = False

        self.frequencies = frequencies
        self.watts = watts
        self.reference_frequency = float(reference_frequency)

    def __repr__(self) -> str:

        repr_frequencies = np.array_repr(self.frequencies)

        return (
            f"PowerModel(frequencies={repr_frequencies}, n_cores={self.n_cores}, "
            f"reference_frequency={self.reference_frequency})"
        )

    @property
    def n_cores(self) -> int:

        return self.watts.shape[1]

    @property
    def top_frequency(self) -> float:

        return float(self.frequencies[-1])

    @property
    def normalized_frequencies(self) -> np.ndarray:
        """Return the frequencies divided by the reference frequency."""
        return self.frequencies / self.reference_frequency

    def watts_at(self, frequency: float, cores: int) -> float:
        """
        Return P(frequency, cores) for one of the discrete frequencies.

        Raises
        ------
        ValueError
            If the frequency is not one of the discrete frequencies, or the core count is out of range.

        """
        if not 1 <= cores <= self.n_cores:
            raise ValueError("The number of active cores is not covered by the power model.")

        (indices,) = np.nonzero(self.frequencies == frequency)

        if indices.size == 0:
            raise ValueError("The frequency is not one of the discrete frequencies.")

        return float(self.watts[indices[0], cores - 1])

    def diagnose(self, rel_tol: float = 1e-9) -> List[PowerDiagnostic]:
        """
        Report where the matrix is not non-decreasing in f or in k, or not convex in f.

        Measured matrices often violate these shapes slightly, so they are
        reported and never rejected.

        Parameters
        ----------
        rel_tol : float, optional
            Relative tolerance of the convexity check (default 1e-9).

        Returns
        -------
        list of PowerDiagnostic
            Empty when the matrix has the expected shape.

        Examples
        --------
        >>> from skmalleable.objects import PowerModel

        >>> model = PowerModel([1.0, 2.0, 3.0], [[10.0], [9.0], [12.0]], reference_frequency=1.0)

        >>> [diagnostic.kind for diagnostic in model.diagnose()]
        ['frequency-monotonicity']

        """
        diagnostics = []

        for i, k in np.argwhere(np.diff(self.watts, axis=0) < 0):
            diagnostics.append(
                PowerDiagnostic(
                    'frequency-monotonicity',
                    float(self.frequencies[i + 1]),
                    int(k) + 1,
                    f"P drops from {self.watts[i, k]} to {self.watts[i + 1, k]} W as the frequency increases.",
                )
            )

        for i, k in np.argwhere(np.diff(self.watts, axis=1) < 0):
            diagnostics.append(
                PowerDiagnostic(
                    'core-monotonicity',
                    float(self.frequencies[i]),
                    int(k) + 2,
                    f"P drops from {self.watts[i, k]} to {self.watts[i, k + 1]} W as a core is added.",
                )
            )

        if self.frequencies.size >= 3:

            slopes = np.diff(self.watts, axis=0) / np.diff(self.frequencies)[:, np.newaxis]
            tolerance = rel_tol * np.abs(slopes).max(axis=0)

            for i, k in np.argwhere(np.diff(slopes, axis=0) < -tolerance):
                diagnostics.append(
                    PowerDiagnostic(
                        'convexity',
                        float(self.frequencies[i + 1]),
                        int(k) + 1,
                        "The slope of P decreases at this frequency.",
                    )
                )

        return diagnostics

    def plot_2d(self, ax_2d: Axes, **kwargs) -> None:
        """
        Plot P(f, k) against the frequency, one curve per active-core count.

        Parameters
        ----------
        ax_2d : Axes
            Instance of :class:`~matplotlib.axes.Axes`.
        kwargs : dict, optional
            Additional keywords passed to :meth:`~matplotlib.axes.Axes.plot`.

        Examples
        --------
        .. plot::
            :include-source:

            >>> import matplotlib.pyplot as plt
            >>> from skmalleable.power import SYNTHETIC_DEFAULTS, synthetic_power_model

            >>> model = synthetic_power_model(n_cores=4, **SYNTHETIC_DEFAULTS)

            >>> _, ax = plt.subplots()
            >>> model.plot_2d(ax, marker='o')

        """
        for k in range(1, self.n_cores + 1):
            ax_2d.plot(self.frequencies, self.watts[:, k - 1], label=f"k={k}", **kwargs)

        ax_2d.set_xlabel("frequency")
        ax_2d.set_ylabel("power (W)")
