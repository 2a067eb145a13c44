"""Private base class for the read-only vectors of the task model."""

from typing import Type, TypeVar

import numpy as np

from skmalleable._functions import _allclose
from skmalleable.typing import array_like

Vector = TypeVar('Vector', bound='_BaseVector')


class _BaseVector(np.ndarray):
    """
    Read-only 1D array of finite entries.

    Subclasses set `_dtype` and add their own checks after calling ``super().__new__``.

    """

    _dtype: type = float

    def __new__(cls: Type[Vector], entries: array_like) -> Vector:

        if np.size(entries) == 0:
            raise ValueError("The array must not be empty.")

        if not np.isfinite(entries).all():
            raise ValueError("The values must all be finite.")

        # Copy so that the caller cannot mutate the object through the input.
        vector = np.array(entries, dtype=cls._dtype).view(cls)
        vector.flags.writeable = False

        if vector.ndim != 1:
            raise ValueError("The array must be 1D.")

        return vector

    def __array_wrap__(self, array, context=None, return_scalar=False):
        """
        Drop the subclass from the results of NumPy operations.

        The result of arithmetic is not validated, so it must not keep the class.

        >>> from skmalleable.objects import SpeedupVector
        >>> speedup = SpeedupVector([1.0, 1.5, 2.0])

        >>> type(speedup * 0.5).__name__
        'ndarray'

        >>> float(speedup.sum())
        4.5

        """
        if return_scalar:
            return array[()]

        return array

    def to_array(self) -> np.ndarray:
        """
        Return a writeable copy as a plain :class:`numpy.ndarray`.

        Examples
        --------
        >>> from skmalleable.objects import SpeedupVector

        >>> SpeedupVector([1.0, 1.5]).to_array()
        array([1. , 1.5])

        """
        return np.array(self)

    def is_close(self, other: array_like, **kwargs: float) -> bool:
        """
        Compare entry by entry with :func:`math.isclose`.

        A vector of another length is never close.

        Examples
        --------
        >>> from skmalleable.objects import SpeedupVector

        >>> SpeedupVector([1.0, 1.5]).is_close([1.0, 1.5 + 1e-12])
        True

        >>> SpeedupVector([1.0, 1.5]).is_close([1.0, 1.5, 2.0])
        False

        """
        if np.shape(other) != self.shape:
            return False

        return bool(_allclose(self, other, **kwargs).all())

    def is_equal(self, other: array_like) -> bool:
        """Return True if the entries and the length match exactly."""
        return bool(np.array_equal(self, other))
