"""Module for the canonical schedule and its simulation record."""

from dataclasses import dataclass
from typing import Dict, Iterator, NamedTuple, Optional, Tuple

import numpy as np
import pandas as pd
from matplotlib.axes import Axes

from skmalleable.plotting import _gantt_2d


class SharePiece(NamedTuple):
    """Interval of one slot where a task runs on a shared processor, in time units from the slot start."""

    task: int
    processor: int
    start: float
    end: float


class Segment(NamedTuple):
    """Interval of one slot with a constant processor assignment; None marks an idle processor."""

    start: float
    end: float
    processors: Tuple[Optional[int], ...]


@dataclass(frozen=True)
class CanonicalAssignment:
    """
    Processor assignment of the canonical malleable gang schedule, repeated in every slot.

    Task i holds the processors `dedicated[i]` for all time and runs on one
    more processor during its share pieces, in unison with the dedicated ones.

    Parameters
    ----------
    n_cores : int
        Number of processors m.
    frequency : float
        Normalized frequency f.
    slot : float
        Length of the repeated slot.
    kappas : tuple of int
        Number of dedicated processors per task.
    shares : tuple of float
        Fraction beta_i of the slot that each task runs on a shared processor.
    dedicated : tuple of tuple of int
        Processor identities held by each task.
    pieces : tuple of SharePiece
        Wrap-around packing of the shares on the shared pool.

    """

    n_cores: int
    frequency: float
    slot: float
    kappas: Tuple[int, ...]
    shares: Tuple[float, ...]
    dedicated: Tuple[Tuple[int, ...], ...]
    pieces: Tuple[SharePiece, ...]

    @property
    def pool(self) -> Tuple[int, ...]:
        """Return the processors left after the dedicated ones."""
        return tuple(range(sum(self.kappas), self.n_cores))

    def busy_time(self, task: int) -> float:
        """Return the processor time given to a task in one slot: (kappa_i + beta_i) times the slot."""
        pieces = sum(piece.end - piece.start for piece in self.pieces if piece.task == task)

        return self.kappas[task] * self.slot + pieces

    def pattern(self) -> Tuple[Segment, ...]:
        """
        Return the slot as segments of constant assignment.

        Segment boundaries are the slot ends and every piece endpoint.

        """
        cuts = {0.0, self.slot}

        for piece in self.pieces:
            cuts.update((piece.start, piece.end))

        times = sorted(cuts)
        segments = []

        for start, end in zip(times[:-1], times[1:]):

            processors: list = [None] * self.n_cores

            for task, held in enumerate(self.dedicated):
                for processor in held:
                    processors[processor] = task

            middle = 0.5 * (start + end)

            for piece in self.pieces:
                if piece.start <= middle < piece.end:
                    processors[piece.processor] = piece.task

            segments.append(Segment(start, end, tuple(processors)))

        return tuple(segments)


class JobRecord(NamedTuple):
    """Work received by one job between its arrival and its deadline."""

    task: int
    index: int
    arrival: float
    deadline: float
    work: float
    demand: float

    @property
    def missed(self) -> bool:
        """Return True if the job received less than its execution time, up to a relative 1e-9."""
        return self.work < self.demand - 1e-9 * self.demand


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a schedule simulation.

    Parameters
    ----------
    misses : tuple of JobRecord
        Jobs that missed their deadline.
    gang_violations : tuple of (int, float)
        (task, time) where a task runs on a number of processors other than kappa_i or kappa_i + 1.
    processor_violations : tuple of (int, float)
        (processor, time) where a processor carries two tasks or does not exist.

    """

    misses: Tuple[JobRecord, ...]
    gang_violations: Tuple[Tuple[int, float], ...]
    processor_violations: Tuple[Tuple[int, float], ...]

    @property
    def is_schedulable(self) -> bool:

        return not (self.misses or self.gang_violations or self.processor_violations)

    def summary(self) -> Dict[str, object]:
        """Return counts and the first missed jobs as plain Python values."""
        return {
            'schedulable': self.is_schedulable,
            'misses': len(self.misses),
            'gang_violations': len(self.gang_violations),
            'processor_violations': len(self.processor_violations),
            'missed_jobs': [
                {'task': job.task, 'arrival': job.arrival, 'work': job.work, 'demand': job.demand}
                for job in self.misses[:10]
            ],
        }


@dataclass(frozen=True)
class ScheduleTrace:
    """
    Record of the canonical schedule over a horizon.

    The slot pattern repeats `n_slots` times from time 0.

    Parameters
    ----------
    assignment : CanonicalAssignment
        The simulated assignment.
    horizon : float
        End of the simulation.
    n_slots : int
        Number of slots in the horizon.
    jobs : tuple of JobRecord
        Every job with its deadline inside the horizon.

    """

    assignment: CanonicalAssignment
    horizon: float
    n_slots: int
    jobs: Tuple[JobRecord, ...]

    def segments(self) -> Iterator[Segment]:
        """Yield the segments of every slot of the horizon, with absolute times."""
        pattern = self.assignment.pattern()
        slot = self.assignment.slot

        for index in range(self.n_slots):

            offset = index * slot

            for segment in pattern:
                yield Segment(offset + segment.start, offset + segment.end, segment.processors)

    def work_by_task(self) -> np.ndarray:
        """Return the total work received by each task over the horizon."""
        n_tasks = len(self.assignment.kappas)
        totals = np.zeros(n_tasks)

        for job in self.jobs:
            totals[job.task] += job.work

        return totals

    def to_frame(self) -> pd.DataFrame:
        """
        Return one row per (slot_start, slot_end, processor, task), with 'IDLE' for idle processors.

        Examples
        --------
        >>> from skmalleable.objects import Task, TaskSystem
        >>> from skmalleable.schedule import build_canonical, simulate

        >>> tau = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])
        >>> trace, _ = simulate(build_canonical(tau, 3, 1.0, slot=4), tau)

        >>> trace.to_frame()
           slot_start  slot_end  processor  task
        0         0.0       3.0          0     0
        1         0.0       3.0          1     0
        2         0.0       3.0          2     1
        3         3.0       4.0          0     0
        4         3.0       4.0          1     0
        5         3.0       4.0          2  IDLE

        """
        rows = [
            (segment.start, segment.end, processor, 'IDLE' if task is None else task)
            for segment in self.segments()
            for processor, task in enumerate(segment.processors)
        ]

        return pd.DataFrame(rows, columns=['slot_start', 'slot_end', 'processor', 'task'])

    def plot_2d(self, ax_2d: Axes, **kwargs) -> None:
        """
        Plot one slot of the schedule as a Gantt chart, one row per processor.

        Parameters
        ----------
        ax_2d : Axes
            Instance of :class:`~matplotlib.axes.Axes`.
        kwargs : dict, optional
            Additional keywords passed to :meth:`~matplotlib.axes.Axes.broken_barh`.

        """
        _gantt_2d(ax_2d, self.assignment.pattern(), **kwargs)
