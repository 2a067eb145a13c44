"""Custom types for annotations."""

from typing import Callable, Sequence, Union

import numpy as np


array_like = Union[np.ndarray, Sequence]

rate_function = Callable[[np.ndarray], np.ndarray]
"""A vectorized power-rate function of a voltage or frequency level."""
