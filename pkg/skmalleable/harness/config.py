"""
Experiment configuration.

A configuration document is YAML::

    seed: 2024
    trials: 50
    n_tasks: 8
    utilizations: {start: 1.5, stop: 8.0, step: 0.5}
    cores: [1, 2, 3, 4, 5, 6, 7, 8]
    u_max: [0.4, 0.8, 1.2]
    speedup: cpu-bound
    power: synthetic
    baseline: strict
    mode: exact

`power` is `synthetic`, a mapping that overrides entries of
:data:`~skmalleable.power.SYNTHETIC_DEFAULTS`, or the path of a power-matrix
file relative to the configuration file.

"""

import hashlib
import json
import math
from dataclasses import dataclass, field, fields, replace
from numbers import Integral, Real
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import yaml

from skmalleable._functions import _round_significant
from skmalleable.exceptions import ConfigError
from skmalleable.harness.generation import speedup_vector
from skmalleable.objects import PowerModel
from skmalleable.optimizer import BASELINE_MODES, TABLE_MODES
from skmalleable.power import SYNTHETIC_DEFAULTS, read_power_matrix, synthetic_power_model

_REQUIRED = ('seed', 'trials', 'n_tasks', 'utilizations', 'cores', 'u_max')


@dataclass(frozen=True)
class SweepConfig:
    """
    Grid, generator and power model of a power-savings sweep.

    Parameters
    ----------
    seed : int
        Seed of every random draw of the sweep.
    trials : int
        Number of task systems per grid point.
    n_tasks : int
        Number of tasks per system.
    utilizations : tuple of float
        Total utilizations of the grid.
    cores : tuple of int
        Numbers of active cores of the grid.
    u_max : tuple of float
        Utilizations of the pinned first task.
    u_cap : float, optional
        Ceiling of the other utilizations (default is gamma_M times the normalized
        top frequency, with M the largest core count).
    period_range : tuple of int, optional
        Inclusive range of the periods (default (10, 100)).
    speedup : str, optional
        Speedup source shared by every task (default 'amdahl:0.9').
    power : {str, dict}, optional
        'synthetic', overrides of the synthetic defaults, or a power-matrix path (default 'synthetic').
    baseline : {'strict', 'paper'}, optional
        Frequency rule of the non-parallel baseline (default 'strict').
    mode : {'exact', 'enumerate'}, optional
        Row rule of the optimizer table (default 'exact').
    workers : int, optional
        Number of worker processes (default 1).
    discard_budget : int, optional
        Discarded utilization vectors allowed per system (default 10000).
    base_dir : str, optional
        Directory that a power-matrix path is relative to. It is not part of the configuration hash.

    Raises
    ------
    ConfigError
        If a value is out of range.

    Examples
    --------
    >>> from skmalleable.harness.config import SweepConfig

    >>> config = SweepConfig.from_yaml('''
    ... seed: 1
    ... trials: 2
    ... n_tasks: 4
    ... utilizations: {start: 1.5, stop: 2.5, step: 0.5}
    ... cores: [2, 4]
    ... u_max: [0.4]
    ... ''')

    >>> config.utilizations
    (1.5, 2.0, 2.5)

    >>> config.config_hash() == SweepConfig.from_dict(config.to_dict()).config_hash()
    True

    >>> SweepConfig.from_dict({**config.to_dict(), 'baseline': 'optimal'})
    Traceback (most recent call last):
    ...
    skmalleable.exceptions.ConfigError: The baseline must be one of ('strict', 'paper').

    """

    seed: int
    trials: int
    n_tasks: int
    utilizations: Tuple[float, ...]
    cores: Tuple[int, ...]
    u_max: Tuple[float, ...]
    u_cap: Optional[float] = None
    period_range: Tuple[int, int] = (10, 100)
    speedup: str = 'amdahl:0.9'
    power: Union[str, Dict[str, Any]] = field(default='synthetic', hash=False)
    baseline: str = 'strict'
    mode: str = 'exact'
    workers: int = 1
    discard_budget: int = 10000
    base_dir: str = field(default='.', compare=False)

    def __post_init__(self):

        try:
            object.__setattr__(self, 'utilizations', tuple(_round_significant(float(u)) for u in self.utilizations))
            object.__setattr__(self, 'cores', tuple(int(m) for m in self.cores))
            object.__setattr__(self, 'u_max', tuple(float(u) for u in self.u_max))
            object.__setattr__(self, 'period_range', tuple(int(p) for p in self.period_range))
        except (TypeError, ValueError) as error:
            raise ConfigError(f"The grid must contain numbers only: {error}") from error

        for name in ('seed', 'trials', 'n_tasks', 'workers', 'discard_budget'):

            value = getattr(self, name)

            if isinstance(value, bool) or not isinstance(value, Integral):
                raise ConfigError(f"The value of '{name}' must be an integer.")

        if self.u_cap is not None and (isinstance(self.u_cap, bool) or not isinstance(self.u_cap, Real)):
            raise ConfigError("The utilization cap must be a number.")

        if not isinstance(self.speedup, str):
            raise ConfigError("The speedup source must be a string.")

        if self.trials < 1 or self.n_tasks < 1:
            raise ConfigError("The number of trials and the number of tasks must be positive.")

        if any(not u > 0 for u in self.utilizations + self.u_max):
            raise ConfigError("The utilizations must be positive.")

        if any(m < 1 for m in self.cores):
            raise ConfigError("The numbers of active cores must be positive.")

        if self.u_cap is not None and not self.u_cap > 0:
            raise ConfigError("The utilization cap must be positive.")

        if len(self.period_range) != 2 or not 1 <= self.period_range[0] <= self.period_range[1]:
            raise ConfigError("The period range must be two integers with 1 <= low <= high.")

        if self.baseline not in BASELINE_MODES:
            raise ConfigError(f"The baseline must be one of {BASELINE_MODES}.")

        if self.mode not in TABLE_MODES:
            raise ConfigError(f"The mode must be one of {TABLE_MODES}.")

        if self.workers < 1 or self.discard_budget < 1:
            raise ConfigError("The number of workers and the discard budget must be positive.")

        try:
            speedup_vector(self.speedup, self.max_cores)
        except ValueError as error:
            raise ConfigError(str(error)) from error

        if isinstance(self.power, dict):

            unknown = set(self.power) - set(SYNTHETIC_DEFAULTS)

            if unknown:
                raise ConfigError(f"Unknown synthetic power parameters: {sorted(unknown)}.")

        elif not isinstance(self.power, str):
            raise ConfigError("The power model must be 'synthetic', a mapping, or a file path.")

    @property
    def max_cores(self) -> int:
        """Return the largest number of active cores, which is also the length of the speedup vectors."""
        return max(self.cores, default=1)

    @property
    def n_points(self) -> int:

        return len(self.utilizations) * len(self.cores) * len(self.u_max)

    @classmethod
    def from_dict(cls, document: Dict[str, Any], base_dir: Union[str, Path] = '.') -> 'SweepConfig':
        """
        Instantiate a configuration from a parsed document.

        `utilizations` is a list, or a mapping with `start`, `stop` and `step`
        that is expanded with both ends included.

        """
        if not isinstance(document, dict):
            raise ConfigError("The configuration must be a mapping.")

        missing = [key for key in _REQUIRED if key not in document]

        if missing:
            raise ConfigError(f"The configuration is missing {missing}.")

        names = {spec.name for spec in fields(cls)} - {'base_dir'}
        unknown = set(document) - names

        if unknown:
            raise ConfigError(f"Unknown configuration keys: {sorted(unknown)}.")

        values = dict(document)

        try:
            values['utilizations'] = _expand_range(values['utilizations'])

            return cls(**values, base_dir=str(base_dir))
        except TypeError as error:
            raise ConfigError(str(error)) from error

    @classmethod
    def from_yaml(cls, text: str, base_dir: Union[str, Path] = '.') -> 'SweepConfig':

        try:
            document = yaml.safe_load(text)
        except yaml.YAMLError as error:
            raise ConfigError(f"The configuration is not valid YAML: {error}") from error

        return cls.from_dict(document, base_dir=base_dir)

    @classmethod
    def read(cls, path: Union[str, Path]) -> 'SweepConfig':
        """Read a configuration file. A power-matrix path inside it is relative to the file."""
        path = Path(path)

        return cls.from_yaml(path.read_text(), base_dir=path.parent)

    @classmethod
    def full_grid(cls, **overrides: Any) -> 'SweepConfig':
        """
        Return the full grid: U from 1.5 to 8 in steps of 0.1, 1 to 8 cores, U_max in {0.4, 0.8, 1.2}, 1000 trials.

        Every discrete frequency is tested, as the measured power rates need not increase with the frequency.

        """
        values = dict(
            seed=0,
            trials=1000,
            n_tasks=8,
            utilizations=_expand_range({'start': 1.5, 'stop': 8.0, 'step': 0.1}),
            cores=tuple(range(1, 9)),
            u_max=(0.4, 0.8, 1.2),
            mode='enumerate',
        )

        return cls(**{**values, **overrides})

    @classmethod
    def desk_grid(cls, **overrides: Any) -> 'SweepConfig':
        """Return the reduced grid: U from 1.5 to 8 in steps of 0.5 and 50 trials."""
        values = dict(trials=50, utilizations=_expand_range({'start': 1.5, 'stop': 8.0, 'step': 0.5}), mode='exact')

        return replace(cls.full_grid(), **{**values, **overrides})

    def to_dict(self) -> Dict[str, Any]:
        """Return the normalized configuration as plain Python values, without `base_dir`."""
        return {
            'seed': self.seed,
            'trials': self.trials,
            'n_tasks': self.n_tasks,
            'utilizations': list(self.utilizations),
            'cores': list(self.cores),
            'u_max': list(self.u_max),
            'u_cap': self.u_cap,
            'period_range': list(self.period_range),
            'speedup': self.speedup,
            'power': dict(self.power) if isinstance(self.power, dict) else self.power,
            'baseline': self.baseline,
            'mode': self.mode,
            'workers': self.workers,
            'discard_budget': self.discard_budget,
        }

    def config_hash(self) -> str:
        """
        Return the SHA-256 of the canonical JSON rendering of the configuration.

        The number of workers does not change the results, so it is left out.

        """
        document = self.to_dict()
        del document['workers']

        canonical = json.dumps(document, sort_keys=True, separators=(',', ':'))

        return hashlib.sha256(canonical.encode()).hexdigest()

    def power_model(self) -> PowerModel:
        """
        Return the power model of the sweep.

        Raises
        ------
        ConfigError
            If the model has fewer cores than the grid.

        """
        if isinstance(self.power, dict) or self.power == 'synthetic':

            parameters = {**SYNTHETIC_DEFAULTS, **(self.power if isinstance(self.power, dict) else {})}
            model = synthetic_power_model(n_cores=self.max_cores, **parameters)

        else:
            model, _ = read_power_matrix(Path(self.base_dir) / self.power)

        if model.n_cores < self.max_cores:
            raise ConfigError(f"The power model covers {model.n_cores} cores, but the grid needs {self.max_cores}.")

        return model


def _expand_range(utilizations: Union[Dict[str, float], Any]) -> Tuple[float, ...]:

    if not isinstance(utilizations, dict):
        return tuple(utilizations)

    if set(utilizations) != {'start', 'stop', 'step'}:
        raise ConfigError("A utilization range must have exactly the keys start, stop and step.")

    try:
        start, stop, step = (float(utilizations[key]) for key in ('start', 'stop', 'step'))
    except (TypeError, ValueError) as error:
        raise ConfigError("The utilization range must contain numbers only.") from error

    if not step > 0:
        raise ConfigError("The utilization step must be positive.")

    n_steps = math.floor((stop - start) / step + 1e-9)

    return tuple(_round_significant(start + i * step) for i in range(n_steps + 1))
