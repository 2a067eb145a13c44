"""Exceptions raised by scikit-malleable."""

from typing import Tuple


class ValidationError(ValueError):
    """Base class for violations of the task model restrictions."""


class NotIncreasingError(ValidationError):
    """The speedup factors are not strictly increasing."""


class _PairError(ValidationError):
    """A restriction that fails for a pair of processor counts."""

    def __init__(self, message: str, pair: Tuple[int, int]):

        super().__init__(message)
        self.pair = pair


class SubLinearityError(_PairError):
    """A speedup ratio is not strictly between one and the processor-count ratio."""


class WorkLimitError(_PairError):
    """A marginal speedup is larger than an earlier marginal speedup."""


class TaskFileError(ValidationError):
    """The task document does not match the task-file schema."""


class NonPositiveDenominatorError(ValueError):
    """The processor vector is inconsistent with the number of processors."""


class NoFeasibleConfigurationError(ValueError):
    """No (active cores, frequency) pair of the power model schedules the system."""


class PowerMatrixError(ValueError):
    """The power-matrix document is malformed."""


class InfeasibleAtFrequencyError(ValueError):
    """The system is not feasible on the given processors at the given frequency."""


class PackingOverflowError(RuntimeError):
    """The fractional shares do not fit on the shared processors."""


class GenerationExhaustedError(RuntimeError):
    """The discard budget ran out before a valid utilization vector was drawn."""


class ConfigError(ValueError):
    """The experiment configuration is invalid."""


class WorkPreservationError(ArithmeticError):
    """A constant-level transformation did not preserve the executed work."""
