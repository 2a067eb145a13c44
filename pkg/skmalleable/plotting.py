"""Private functions used for plotting schedules with Matplotlib."""

from typing import Sequence

import matplotlib.pyplot as plt
from matplotlib.axes import Axes


def _gantt_2d(ax_2d: Axes, segments: Sequence, **kwargs) -> None:
    """
    Plot processor assignments as a Gantt chart.

    Parameters
    ----------
    ax_2d : Axes
        Instance of :class:`~matplotlib.axes.Axes`.
    segments : sequence
        Items with `start`, `end` and `processors` attributes.
        Entry j of `processors` is the task on processor j, or None when idle.
    kwargs : dict, optional
        Additional keywords passed to :meth:`~matplotlib.axes.Axes.broken_barh`.

    """
    colors = plt.get_cmap('tab10')

    for segment in segments:
        for processor, task in enumerate(segment.processors):

            if task is None:
                continue

            ax_2d.broken_barh(
                [(segment.start, segment.end - segment.start)],
                (processor - 0.4, 0.8),
                facecolors=colors(task % 10),
                **kwargs,
            )

    n_processors = max((len(segment.processors) for segment in segments), default=0)

    ax_2d.set_yticks(range(n_processors))
    ax_2d.set_xlabel("time")
    ax_2d.set_ylabel("processor")
