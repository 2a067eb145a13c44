"""
Canonical malleable gang schedule and its verification by simulation.

Every task holds k_i(f) processors for all time. The fractional shares
beta_i are packed in each slot on the remaining processors by wrap-around:
a share fills the current shared processor up to the slot end and
continues on the next one from the slot start. During its share a task runs
on k_i(f) + 1 processors in unison, otherwise on k_i(f).

"""

import logging
import math
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from skmalleable._functions import _gcd
from skmalleable.analysis import _check_cores, feasible, m_of_task
from skmalleable.exceptions import InfeasibleAtFrequencyError, PackingOverflowError
from skmalleable.objects import CanonicalAssignment, JobRecord, ScheduleTrace, SharePiece, TaskSystem, Verdict

logger = logging.getLogger(__name__)

SLOT_DIVISOR = 16

# Overflow of the shared pool below this many processors is rounding error.
_PACKING_TOLERANCE = 1e-9


def default_slot(tau: TaskSystem) -> float:
    """
    Return the default slot length: the gcd of the periods divided by 16.

    Examples
    --------
    >>> from skmalleable.objects import Task, TaskSystem
    >>> from skmalleable.schedule import default_slot

    >>> default_slot(TaskSystem([Task(1, 4, [1.0]), Task(1, 6, [1.0])]))
    0.125

    """
    return _gcd(task.p for task in tau) / SLOT_DIVISOR


def build_canonical(
    tau: TaskSystem, m: int, f: float, slot: Optional[float] = None, check: bool = True
) -> CanonicalAssignment:
    """
    Build the canonical schedule of a system on m processors at frequency f.

    Parameters
    ----------
    tau : TaskSystem
        Input task system.
    m : int
        Number of processors.
    f : float
        Normalized frequency.
    slot : float, optional
        Length of the repeated slot. It must divide every period
        (default is the gcd of the periods divided by 16).
    check : bool, optional
        If True, the system must be feasible at f (default).
        If False, demand that does not fit is clipped and a warning is
        logged, so that a simulation shows the deadline misses.

    Returns
    -------
    CanonicalAssignment
        Dedicated processors and packed shares.

    Raises
    ------
    ValueError
        If the slot does not divide every period.
    InfeasibleAtFrequencyError
        If `check` is True and the system is not feasible on m processors at f.
    PackingOverflowError
        If `check` is True and the shares do not fit on the shared processors.

    Examples
    --------
    >>> from skmalleable.objects import Task, TaskSystem
    >>> from skmalleable.schedule import build_canonical

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    A share of one full processor becomes a dedicated processor.

    >>> assignment = build_canonical(tau, 3, 1.0)

    >>> assignment.dedicated, assignment.shares
    (((0, 1), ()), (0.0, 0.75))

    >>> assignment = build_canonical(tau, 3, 0.9375)

    >>> assignment.kappas, [round(share, 12) for share in assignment.shares]
    ((2, 0), [0.2, 0.8])

    >>> build_canonical(tau, 3, 0.9)
    Traceback (most recent call last):
    ...
    skmalleable.exceptions.InfeasibleAtFrequencyError: The system is not feasible on 3 processors at frequency 0.9.

    """
    _check_cores(tau, m)

    slot = default_slot(tau) if slot is None else slot
    _check_slot(tau, slot)

    if check and not feasible(tau, m, f):
        raise InfeasibleAtFrequencyError(f"The system is not feasible on {m} processors at frequency {f}.")

    kappas, shares = [], []

    for task in tau:

        requirement = m_of_task(task, f, n_cores=m)
        kappa, share = requirement.kappa, requirement.fractional

        if share >= 1 or math.isclose(share, 1.0, rel_tol=1e-12):
            kappa, share = kappa + 1, 0.0

        kappas.append(kappa)
        shares.append(share)

    dedicated = _allocate_dedicated(kappas, m, check)
    kappas = [len(held) for held in dedicated]

    n_dedicated = sum(kappas)
    pieces = _wrap_around(shares, list(range(n_dedicated, m)), slot, check)

    logger.debug("Dedicated processors %s, shares %s, pieces %s.", dedicated, shares, pieces)

    return CanonicalAssignment(
        n_cores=m,
        frequency=f,
        slot=slot,
        kappas=tuple(kappas),
        shares=tuple(shares),
        dedicated=tuple(dedicated),
        pieces=tuple(pieces),
    )


def simulate(
    assignment: CanonicalAssignment, tau: TaskSystem, horizon: Optional[float] = None
) -> Tuple[ScheduleTrace, Verdict]:
    """
    Simulate the canonical schedule with strictly periodic releases from time 0.

    A job misses its deadline when it receives less than its execution time,
    up to a relative 1e-9. Work on c processors at frequency f advances at
    the rate gamma_c * f.

    Parameters
    ----------
    assignment : CanonicalAssignment
        Schedule to simulate.
    tau : TaskSystem
        The task system of the assignment.
    horizon : float, optional
        End of the simulation, at least one hyperperiod (default is the hyperperiod).

    Returns
    -------
    ScheduleTrace
        The schedule and the work of every job with its deadline inside the horizon.
    Verdict
        Deadline misses, gang violations and processor violations.

    Raises
    ------
    ValueError
        If the horizon is shorter than the hyperperiod, or is not a multiple of the slot.

    Examples
    --------
    >>> from skmalleable.objects import Task, TaskSystem
    >>> from skmalleable.schedule import build_canonical, simulate

    >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

    >>> _, verdict = simulate(build_canonical(tau, 3, 0.9375), tau, horizon=4)
    >>> verdict.is_schedulable
    True

    >>> _, verdict = simulate(build_canonical(tau, 3, 0.9, check=False), tau)
    >>> len(verdict.misses) > 0
    True

    """
    if len(assignment.kappas) != len(tau):
        raise ValueError("The assignment must have one entry per task.")

    hyperperiod = tau.hyperperiod()
    horizon = hyperperiod if horizon is None else horizon

    if horizon < hyperperiod:
        raise ValueError("The horizon must cover at least one hyperperiod.")

    slot = assignment.slot
    n_slots = _whole_multiple(horizon, slot, "The horizon must be a multiple of the slot.")

    pattern = assignment.pattern()
    n_tasks = len(tau)

    # counts[s, i] is the number of processors running task i during segment s.
    counts = np.zeros((len(pattern), n_tasks), dtype=int)

    for s, segment in enumerate(pattern):
        for task in segment.processors:
            if task is not None:
                counts[s, task] += 1

    lengths = np.array([segment.end - segment.start for segment in pattern])
    rates = tau.gammas[np.arange(n_tasks), np.minimum(counts, tau.n_cores)] * assignment.frequency
    slot_work = lengths @ rates

    jobs: List[JobRecord] = []

    for i, task in enumerate(tau):

        slots_per_job = _whole_multiple(task.p, slot, "The slot must divide every period.")
        n_jobs = n_slots // slots_per_job

        series = np.full(n_jobs * slots_per_job, slot_work[i])
        works = series.reshape(n_jobs, slots_per_job).sum(axis=1)

        for j, work in enumerate(works.tolist()):
            arrival = float(j * task.p)
            jobs.append(JobRecord(i, j, arrival, arrival + task.p, work, task.e))

    kappas = np.array(assignment.kappas)
    gang_rows, gang_tasks = np.nonzero((counts < kappas) | (counts > kappas + 1))

    verdict = Verdict(
        misses=tuple(job for job in jobs if job.missed),
        gang_violations=tuple((int(i), float(pattern[s].start)) for s, i in zip(gang_rows, gang_tasks)),
        processor_violations=_processor_violations(assignment),
    )

    if not verdict.is_schedulable:
        logger.info("Simulation found %s.", verdict.summary())

    trace = ScheduleTrace(assignment=assignment, horizon=float(horizon), n_slots=n_slots, jobs=tuple(jobs))

    return trace, verdict


def write_trace(trace: ScheduleTrace, path: Union[str, Path]) -> None:
    """Write the trace as delimited text, one row per (slot_start, slot_end, processor, task)."""
    trace.to_frame().to_csv(path, index=False, lineterminator='\n')


def _allocate_dedicated(kappas: List[int], m: int, check: bool) -> List[Tuple[int, ...]]:

    dedicated = []
    next_processor = 0

    for i, kappa in enumerate(kappas):

        held = min(kappa, m - next_processor)

        if held < kappa:

            if check:
                raise PackingOverflowError("The dedicated processors exceed the number of processors.")

            logger.warning("Task %d gets %d of its %d dedicated processors.", i, held, kappa)

        dedicated.append(tuple(range(next_processor, next_processor + held)))
        next_processor += held

    return dedicated


def _wrap_around(shares: List[float], pool: List[int], slot: float, check: bool) -> List[SharePiece]:
    """Pack the shares on the pool, modifying `shares` in place where they are clipped."""
    pieces = []
    position = 0.0

    for i, share in enumerate(shares):

        if share <= 0:
            continue

        available = len(pool) - position

        if share > available + _PACKING_TOLERANCE:

            if check:
                raise PackingOverflowError("The shares exceed the shared processors.")

            logger.warning("The share of task %d is clipped from %r to %r.", i, share, max(available, 0.0))

        share = max(min(share, available), 0.0)
        shares[i] = share

        if share == 0:
            continue

        start, end = position, position + share
        first = min(int(start), len(pool) - 1)

        if end - first <= 1 or first + 1 == len(pool):
            pieces.append(SharePiece(i, pool[first], (start - first) * slot, min(end - first, 1.0) * slot))
        else:
            pieces.append(SharePiece(i, pool[first], (start - first) * slot, slot))
            pieces.append(SharePiece(i, pool[first + 1], 0.0, (end - first - 1) * slot))

        position = end

    return pieces


def _processor_violations(assignment: CanonicalAssignment) -> Tuple[Tuple[int, float], ...]:
    """Return (processor, time) where a shared piece overlaps another or sits on a dedicated processor."""
    dedicated = {processor for held in assignment.dedicated for processor in held}
    violations = []

    for processor in sorted({piece.processor for piece in assignment.pieces}):

        pieces = sorted((piece for piece in assignment.pieces if piece.processor == processor), key=lambda p: p.start)

        if processor in dedicated or not 0 <= processor < assignment.n_cores:
            violations.append((processor, pieces[0].start))

        for previous, piece in zip(pieces[:-1], pieces[1:]):
            if piece.start < previous.end - 1e-12 * assignment.slot:
                violations.append((processor, piece.start))

    return tuple(violations)


def _whole_multiple(value: float, unit: float, message: str) -> int:

    ratio = value / unit
    count = round(ratio)

    if count < 1 or not math.isclose(ratio, count, rel_tol=1e-9):
        raise ValueError(message)

    return int(count)


def _check_slot(tau: TaskSystem, slot: float) -> None:

    if not slot > 0:
        raise ValueError("The slot must be positive.")

    for task in tau:
        _whole_multiple(task.p, slot, "The slot must divide every period.")
