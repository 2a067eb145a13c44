"""
Power-savings sweeps of the parallel scheduler against a non-parallel baseline.

For every total utilization U and pinned utilization U_max, `trials` task
systems are generated once and evaluated on every number of active cores m.
The parallel power is the m-core row of the optimizer table. The baseline
power is the m-core power at the non-parallel minimum frequency, rounded up
to a discrete frequency. With the strict baseline this frequency is never
below the parallel minimum, so float rounding cannot make a saving negative.
The saving of a trial is baseline minus parallel.

"""

import hashlib
import logging
import platform
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import yaml
from numpy.random import PCG64, Generator, SeedSequence

import skmalleable
from skmalleable._functions import _fmean, _fstd
from skmalleable.exceptions import ConfigError
from skmalleable.harness.config import SweepConfig
from skmalleable.harness.generation import GenSpec, speedup_vector, uunifast_discard_max
from skmalleable.objects import PowerModel
from skmalleable.optimizer import frequency_table, minimum_optimal_frequency, nonparallel_min_frequency
from skmalleable.power import quantize_frequency, save_power_matrix

logger = logging.getLogger(__name__)

# (m, baseline watts, parallel watts) of one system; None where no discrete frequency suffices.
_TrialPowers = List[Tuple[int, Optional[float], Optional[float]]]


@dataclass(frozen=True)
class SweepRow:
    """Savings statistics of one grid point (U_target, m, U_max), in watts."""

    U_target: float
    m: int
    U_max: float
    mean_savings_W: float
    stddev: float
    infeasible_baseline_count: int
    infeasible_parallel_count: int
    mean_baseline_W: float
    mean_parallel_W: float
    n_valid: int


COLUMNS = tuple(spec.name for spec in fields(SweepRow))


@dataclass(frozen=True)
class SweepResult:
    """
    Rows of a sweep, ordered by U_target, then m, then U_max.

    Parameters
    ----------
    rows : tuple of SweepRow
        One row per grid point.
    trials : int
        Task systems per grid point.
    seed : int
        Seed of the sweep.
    baseline : str
        Frequency rule of the baseline.
    mode : str
        Row rule of the optimizer table.
    config_hash : str
        Hash of the configuration.
    power_identity : str
        SHA-256 of the serialized power model.

    """

    rows: Tuple[SweepRow, ...]
    trials: int
    seed: int
    baseline: str
    mode: str
    config_hash: str
    power_identity: str

    def to_frame(self) -> pd.DataFrame:
        """Return the rows as a table with the columns of :class:`SweepRow`."""
        if not self.rows:
            return pd.DataFrame(columns=list(COLUMNS))

        return pd.DataFrame([astuple(row) for row in self.rows], columns=list(COLUMNS))


def power_identity(power: PowerModel) -> str:
    """Return the SHA-256 of the power-matrix document of a model."""
    return hashlib.sha256(save_power_matrix(power).encode()).hexdigest()


def run_sweep(config: SweepConfig, power: Optional[PowerModel] = None) -> SweepResult:
    """
    Run a power-savings sweep.

    Trial t of the pair (U, U_max) with index j draws from a PCG64 generator
    seeded by SeedSequence([seed, j, t]), and every mean is a compensated sum,
    so the result does not depend on the number of workers.

    Parameters
    ----------
    config : SweepConfig
        Grid, generator and evaluation rules.
    power : PowerModel, optional
        Power model (default is the model named by the configuration).

    Returns
    -------
    SweepResult
        One row per grid point.

    Raises
    ------
    ConfigError
        If a grid point admits no task system, or the power model has too few cores.
    GenerationExhaustedError
        If the discard budget runs out.

    Examples
    --------
    >>> from skmalleable.harness.config import SweepConfig
    >>> from skmalleable.harness.sweep import run_sweep

    >>> config = SweepConfig(seed=3, trials=4, n_tasks=4, utilizations=[2.0], cores=[2, 4], u_max=[0.8])
    >>> result = run_sweep(config)

    >>> [(row.m, row.n_valid) for row in result.rows]
    [(2, 4), (4, 4)]

    >>> all(row.mean_savings_W >= 0 for row in result.rows)
    True

    """
    power = config.power_model() if power is None else power

    if power.n_cores < config.max_cores:
        raise ConfigError(f"The power model covers {power.n_cores} cores, but the grid needs {config.max_cores}.")

    specs = _generation_specs(config, power) if config.cores else []
    jobs = [
        (spec, (config.seed, j, trial), power, config.cores, config.baseline, config.mode)
        for j, spec in enumerate(specs)
        for trial in range(config.trials)
    ]

    logger.info("Sweep over %d grid points with %d trials each.", config.n_points, config.trials)

    if config.workers > 1 and jobs:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            outcomes = list(executor.map(_evaluate_trial, jobs, chunksize=max(1, config.trials // config.workers)))
    else:
        outcomes = [_evaluate_trial(job) for job in jobs]

    rows = []

    for utilization in config.utilizations:
        for m in config.cores:
            for u_max in config.u_max:

                j = _pair_index(config, utilization, u_max)
                trial_powers = outcomes[j * config.trials : (j + 1) * config.trials]

                rows.append(_aggregate(utilization, m, u_max, trial_powers))

        logger.info("Finished U = %s.", utilization)

    n_infeasible = sum(row.infeasible_baseline_count for row in rows)

    if n_infeasible:
        logger.warning("%d trials had no discrete frequency for the baseline and were excluded.", n_infeasible)

    return SweepResult(
        rows=tuple(rows),
        trials=config.trials,
        seed=config.seed,
        baseline=config.baseline,
        mode=config.mode,
        config_hash=config.config_hash(),
        power_identity=power_identity(power),
    )


def emit(result: SweepResult, out_dir: Union[str, Path]) -> Tuple[Path, Path]:
    """
    Write `sweep.csv` and `manifest.yaml` to a directory.

    Reals are written with 12 significant digits, so a fixed seed gives identical bytes.
    An empty sweep gives a file with the header only.

    Returns
    -------
    tuple of Path
        The data file and the manifest.

    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    path_data = out_dir / 'sweep.csv'
    path_manifest = out_dir / 'manifest.yaml'

    result.to_frame().to_csv(path_data, index=False, float_format='%.12g', na_rep='nan', lineterminator='\n')

    manifest = {
        'seed': result.seed,
        'config_hash': result.config_hash,
        'baseline': result.baseline,
        'mode': result.mode,
        'trials': result.trials,
        'power_identity': result.power_identity,
        'versions': {
            'skmalleable': skmalleable.__version__,
            'numpy': np.__version__,
            'pandas': pd.__version__,
            'python': platform.python_version(),
        },
    }

    path_manifest.write_text(yaml.safe_dump(manifest, sort_keys=False))

    logger.info("Wrote %s and %s.", path_data, path_manifest)

    return path_data, path_manifest


def check_umax_trend(result: SweepResult, atol: float = 1e-9) -> bool:
    """
    Return True if the mean savings do not increase with U_max at every (U_target, m).

    The trend depends on the shape of the power model, so a failure is logged as a warning only.

    """
    frame = result.to_frame()
    violations = 0

    for _, group in frame.groupby(['U_target', 'm'], sort=False):

        savings = group.sort_values('U_max')['mean_savings_W'].dropna().to_numpy(dtype=float)
        violations += int(np.count_nonzero(np.diff(savings) > atol))

    if violations:
        logger.warning("The mean savings increase with U_max at %d places.", violations)

    return violations == 0


def _generation_specs(config: SweepConfig, power: PowerModel) -> List[GenSpec]:
    """Return one generation spec per (U, U_max) pair, in the order of :func:`_pair_index`."""
    if config.u_cap is None:
        gamma_top = float(speedup_vector(config.speedup, config.max_cores)[-1])
        u_cap = gamma_top * float(power.normalized_frequencies[-1])
    else:
        u_cap = config.u_cap

    specs = []

    for utilization, u_max in _pairs(config):

        try:
            spec = GenSpec(
                n=config.n_tasks,
                U_target=utilization,
                U_max=u_max,
                u_cap=u_cap,
                seed=config.seed,
                period_range=config.period_range,
                speedup_source=config.speedup,
                n_cores=config.max_cores,
                discard_budget=config.discard_budget,
            )
        except ValueError as error:
            raise ConfigError(f"No task system at U = {utilization}, U_max = {u_max}: {error}") from error

        specs.append(spec)

    return specs


def _pairs(config: SweepConfig) -> Iterator[Tuple[float, float]]:

    for utilization in config.utilizations:
        for u_max in config.u_max:
            yield utilization, u_max


def _pair_index(config: SweepConfig, utilization: float, u_max: float) -> int:

    return config.utilizations.index(utilization) * len(config.u_max) + config.u_max.index(u_max)


def _evaluate_trial(job: Tuple[GenSpec, Tuple[int, int, int], PowerModel, Sequence[int], str, str]) -> _TrialPowers:
    """Generate one task system and return its baseline and parallel power on every core count."""
    spec, entropy, power, cores, baseline, mode = job

    rng = Generator(PCG64(SeedSequence(list(entropy))))
    tau = uunifast_discard_max(spec, rng)

    table = frequency_table(tau, power, m_max=max(cores), mode=mode)
    powers = []

    for m in cores:

        f_baseline = nonparallel_min_frequency(tau, m, mode=baseline)

        if baseline == 'strict':
            # f_min <= f_baseline holds exactly in strict mode; only rounding can break it.
            f_min = table[m - 1].f_min_continuous
            f_baseline = max(f_baseline, minimum_optimal_frequency(tau, m) if f_min is None else f_min)

        quantized = quantize_frequency(f_baseline, power)
        watts_baseline = None if quantized is None else power.watts_at(quantized, m)

        powers.append((m, watts_baseline, table[m - 1].power_watts))

    return powers


def _aggregate(utilization: float, m: int, u_max: float, trial_powers: Sequence[_TrialPowers]) -> SweepRow:

    baselines, parallels = [], []
    n_baseline_missing = n_parallel_missing = 0

    for powers in trial_powers:

        watts_baseline, watts_parallel = next((b, p) for count, b, p in powers if count == m)

        n_baseline_missing += watts_baseline is None
        n_parallel_missing += watts_parallel is None

        if watts_baseline is not None and watts_parallel is not None:
            baselines.append(watts_baseline)
            parallels.append(watts_parallel)

    savings = [b - p for b, p in zip(baselines, parallels)]

    return SweepRow(
        U_target=utilization,
        m=m,
        U_max=u_max,
        mean_savings_W=_fmean(savings),
        stddev=_fstd(savings),
        infeasible_baseline_count=n_baseline_missing,
        infeasible_parallel_count=n_parallel_missing,
        mean_baseline_W=_fmean(baselines),
        mean_parallel_W=_fmean(parallels),
        n_valid=len(savings),
    )
