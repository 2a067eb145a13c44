"""
Power matrices, energy accounting and the comparison of frequency changes against a constant level.

Power-matrix documents are delimited text with a required metadata line::

    # reference_frequency = 1.6
    freq, k=1, k=2
    1.6, 20.1, 26.3
    2.4, 27.5, 41.0

"""

import io
import logging
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from skmalleable.exceptions import PowerMatrixError, WorkPreservationError
from skmalleable.objects import EnergyQuote, PowerDiagnostic, PowerModel
from skmalleable.typing import array_like, rate_function

logger = logging.getLogger(__name__)

_REFERENCE_PATTERN = re.compile(r'^\s*#\s*reference_frequency\s*=\s*(\S+)\s*$', re.MULTILINE)

# Synthetic fixture, not measured data: P(f, k) = static + k * (alpha * f**3 + beta), f in GHz.
SYNTHETIC_DEFAULTS: Dict[str, Any] = {
    'frequencies': np.linspace(1.6, 3.2, 13).tolist(),
    'static': 15.0,
    'alpha': 0.8,
    'beta': 1.5,
    'reference_frequency': 1.6,
}


def load_power_matrix(document: str) -> Tuple[PowerModel, List[PowerDiagnostic]]:
    """
    Load a power model from a power-matrix document.

    Parameters
    ----------
    document : str
        Text with a `# reference_frequency = <value>` line, the header
        `freq, k=1, ..., k=m`, and one row of watts per frequency.

    Returns
    -------
    PowerModel
        The validated model.
    list of PowerDiagnostic
        Shape violations of the matrix. Each is also logged as a warning.

    Raises
    ------
    PowerMatrixError
        If the metadata line or the header is missing, a row is wider or
        narrower than the header, a cell is missing or not numeric, a rate is
        not positive, or the frequencies do not increase.

    Examples
    --------
    >>> from skmalleable.power import load_power_matrix

    >>> text = '''
    ... # reference_frequency = 1.0
    ... freq, k=1, k=2
    ... 1.0, 10.0, 15.0
    ... 2.0, 20.0, 30.0
    ... '''

    >>> model, diagnostics = load_power_matrix(text)

    >>> model.watts
    array([[10., 15.],
           [20., 30.]])

    >>> diagnostics
    []

    >>> load_power_matrix(text.replace('30.0', ''))
    Traceback (most recent call last):
    ...
    skmalleable.exceptions.PowerMatrixError: The power matrix has a missing cell.

    """
    match = _REFERENCE_PATTERN.search(document)

    if match is None:
        raise PowerMatrixError("The line '# reference_frequency = <value>' is required.")

    try:
        reference_frequency = float(match.group(1))
    except ValueError as error:
        raise PowerMatrixError("The reference frequency must be a number.") from error

    _check_row_widths(document)

    try:
        table = pd.read_csv(io.StringIO(document), comment='#', skipinitialspace=True, index_col=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as error:
        raise PowerMatrixError(f"The power matrix is malformed: {error}") from error

    columns = [str(column).strip() for column in table.columns]
    expected = ['freq'] + [f"k={k}" for k in range(1, len(columns))]

    if len(columns) < 2 or columns != expected:
        raise PowerMatrixError("The header must be 'freq, k=1, ..., k=m'.")

    if table.isna().to_numpy().any():
        raise PowerMatrixError("The power matrix has a missing cell.")

    try:
        values = table.apply(pd.to_numeric).to_numpy(dtype=float)
    except (ValueError, TypeError) as error:
        raise PowerMatrixError("The power matrix must contain numbers only.") from error

    model = PowerModel(values[:, 0], values[:, 1:], reference_frequency)
    diagnostics = model.diagnose()

    for diagnostic in diagnostics:
        logger.warning(
            "Power matrix %s at f=%s, k=%d: %s", diagnostic.kind, diagnostic.frequency, diagnostic.cores, diagnostic.detail
        )

    return model, diagnostics


def read_power_matrix(path: Union[str, Path]) -> Tuple[PowerModel, List[PowerDiagnostic]]:
    """Load a power model from a power-matrix file."""
    return load_power_matrix(Path(path).read_text())


def save_power_matrix(model: PowerModel) -> str:
    """
    Serialize a power model to a power-matrix document.

    Examples
    --------
    >>> from skmalleable.objects import PowerModel
    >>> from skmalleable.power import save_power_matrix

    >>> model = PowerModel([1.0, 2.0], [[10.0, 15.0], [20.0, 30.0]], reference_frequency=1.0)

    >>> print(save_power_matrix(model), end='')
    # reference_frequency = 1.0
    freq,k=1,k=2
    1.0,10.0,15.0
    2.0,20.0,30.0

    """
    columns = ['freq'] + [f"k={k}" for k in range(1, model.n_cores + 1)]
    table = pd.DataFrame(np.column_stack([model.frequencies, model.watts]), columns=columns)

    return f"# reference_frequency = {model.reference_frequency!r}\n" + table.to_csv(index=False, lineterminator='\n')


def synthetic_power_model(
    frequencies: array_like,
    n_cores: int,
    static: float,
    alpha: float,
    beta: float,
    reference_frequency: float,
) -> PowerModel:
    """
    Return the synthetic convex power model P(f, k) = static + k * (alpha * f^3 + beta).

    The model is non-decreasing in f and in k, and convex in f.

    Examples
    --------
    >>> from skmalleable.power import SYNTHETIC_DEFAULTS, synthetic_power_model

    >>> model = synthetic_power_model(n_cores=8, **SYNTHETIC_DEFAULTS)

    >>> model.watts.shape
    (13, 8)

    >>> model.diagnose()
    []

    """
    frequencies = np.asarray(frequencies, dtype=float)
    cores = np.arange(1, n_cores + 1)

    watts = static + np.multiply.outer(alpha * frequencies**3 + beta, cores)

    return PowerModel(frequencies, watts, reference_frequency)


def quantize_frequency(f_norm: float, power: PowerModel) -> Optional[float]:
    """
    Return the smallest discrete frequency whose normalized value is at least f_norm.

    The frequency is never rounded down, not even by one ulp.

    Parameters
    ----------
    f_norm : float
        Normalized frequency.
    power : PowerModel
        Power model with the discrete frequencies.

    Returns
    -------
    float or None
        Physical frequency, or None if f_norm is above the top frequency.

    Examples
    --------
    >>> from skmalleable.objects import PowerModel
    >>> from skmalleable.power import quantize_frequency

    >>> power = PowerModel([0.8, 0.9375, 1.0], [[1.0], [2.0], [3.0]], reference_frequency=1.0)

    >>> quantize_frequency(0.9375, power), quantize_frequency(0.94, power), quantize_frequency(1.01, power)
    (0.9375, 1.0, None)

    >>> quantize_frequency(0.9375 * (1 + 1e-15), power)
    1.0

    """
    if not f_norm > 0:
        raise ValueError("The frequency must be positive.")

    index = int(np.searchsorted(power.normalized_frequencies, f_norm, side='left'))

    if index == power.frequencies.size:
        return None

    return float(power.frequencies[index])


def cubic_rate(level: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Return the dissipation rate level^3."""
    return level**3


def piecewise_linear_rate(slopes: array_like, intercepts: array_like) -> rate_function:
    """
    Return the convex rate function max_j (slopes[j] * x + intercepts[j]).

    Examples
    --------
    >>> from skmalleable.power import piecewise_linear_rate

    >>> rate = piecewise_linear_rate([1.0, 3.0], [0.0, -2.0])

    >>> float(rate(0.5)), float(rate(2.0))
    (0.5, 4.0)

    """
    slopes = np.asarray(slopes, dtype=float)
    intercepts = np.asarray(intercepts, dtype=float)

    if slopes.shape != intercepts.shape or slopes.ndim != 1 or slopes.size == 0:
        raise ValueError("The slopes and intercepts must be 1D arrays of the same length.")

    def rate(level):
        return (np.multiply.outer(level, slopes) + intercepts).max(axis=-1)

    return rate


def energy_constant(level: float, duration: float, rate: rate_function = cubic_rate) -> EnergyQuote:
    """
    Return the energy of running at a constant level for a duration.

    Examples
    --------
    >>> from skmalleable.power import energy_constant

    >>> energy_constant(2.0, 3.0).energy
    24.0

    """
    if not level > 0:
        raise ValueError("The level must be positive.")

    if not duration > 0:
        raise ValueError("The duration must be positive.")

    return EnergyQuote(duration, float(rate(level)))


def dvfs_comparison(
    level: Union[float, array_like],
    ell: Union[float, array_like],
    delta: Union[float, array_like],
    rate: rate_function = cubic_rate,
) -> Tuple[Any, Any, Any]:
    """
    Compare the energy of a two-level schedule with the constant level that does the same work.

    A fraction ell of the time runs at level + delta and the rest runs at
    level - delta', with delta' = ell * delta / (1 - ell), so the executed
    work equals the work at the constant level. For a convex rate the
    two-level energy is never lower.

    The inputs broadcast, so many samples can be compared in one call.

    Parameters
    ----------
    level : {float, array_like}
        Constant level v.
    ell : {float, array_like}
        Fraction of time at the raised level, strictly between 0 and 1.
    delta : {float, array_like}
        Positive increase of the level.
    rate : callable, optional
        Rate function of the level (default :func:`cubic_rate`).

    Returns
    -------
    dynamic : {float, ndarray}
        ell * P(v + delta) + (1 - ell) * P(v - delta').
    constant : {float, ndarray}
        P(v).
    delta_prime : {float, ndarray}
        The decrease delta'.

    Raises
    ------
    ValueError
        If ell is not in (0, 1), delta is not positive, or v - delta' is not positive.
    WorkPreservationError
        If the two schedules do not execute the same work to 1e-12.

    Examples
    --------
    >>> from skmalleable.power import dvfs_comparison

    >>> dynamic, constant, delta_prime = dvfs_comparison(1.0, 0.5, 0.2)

    >>> round(dynamic, 12), constant, delta_prime
    (1.12, 1.0, 0.2)

    """
    level, ell, delta = (np.asarray(value, dtype=float) for value in (level, ell, delta))

    if not (np.all(ell > 0) and np.all(ell < 1)):
        raise ValueError("The fraction of time must be strictly between 0 and 1.")

    if not np.all(delta > 0):
        raise ValueError("The level increase must be positive.")

    delta_prime = ell * delta / (1 - ell)
    lowered = level - delta_prime

    if not np.all(lowered > 0):
        raise ValueError("The lowered level must be positive.")

    raised = level + delta
    work = ell * raised + (1 - ell) * lowered

    if not np.all(np.abs(work - level) <= 1e-12 * np.maximum(1.0, np.abs(level))):
        raise WorkPreservationError("The two-level schedule does not preserve the executed work.")

    dynamic = ell * rate(raised) + (1 - ell) * rate(lowered)
    constant = rate(level)

    return _unwrap(dynamic), _unwrap(constant), _unwrap(delta_prime)


def _unwrap(array: Any) -> Any:

    array = np.asarray(array)

    return float(array) if array.ndim == 0 else array


def _check_row_widths(document: str) -> None:
    """Raise PowerMatrixError if a data row has a different number of cells than the header."""
    rows = [line.split('#', 1)[0] for line in document.splitlines()]
    rows = [row for row in rows if row.strip()]

    if not rows:
        return

    width = rows[0].count(',') + 1

    for number, row in enumerate(rows[1:], start=1):

        if row.count(',') + 1 != width:
            raise PowerMatrixError(f"Row {number} has {row.count(',') + 1} cells, but the header has {width}.")
