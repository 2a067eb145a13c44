import logging
import math

import pytest

from skmalleable.exceptions import InfeasibleAtFrequencyError
from skmalleable.objects import CanonicalAssignment, SharePiece, Task, TaskSystem
from skmalleable.schedule import build_canonical, default_slot, simulate, write_trace

TAU = TaskSystem([Task(6, 4, [1.0, 1.5, 2.0]), Task(3, 4, [1.0, 1.2, 1.3])])

# Three tasks of utilization 2/3 fill two processors exactly at f = 1.
TAU_WRAP = TaskSystem([Task(2, 3, [1.0, 1.5]) for _ in range(3)])


@pytest.mark.parametrize(
    "periods, slot_expected",
    [([4], 0.25), ([4, 6], 0.125), ([10, 15], 0.3125), ([3, 5], 0.0625)],
)
def test_default_slot(periods, slot_expected):

    assert default_slot(TaskSystem([Task(1, p, [1.0]) for p in periods])) == slot_expected


def test_build_canonical_fold():

    assignment = build_canonical(TAU, 3, 1.0)

    assert assignment.slot == 0.25
    assert assignment.kappas == (2, 0)
    assert assignment.dedicated == ((0, 1), ())
    assert assignment.shares == (0.0, 0.75)
    assert assignment.pool == (2,)
    assert assignment.pieces == (SharePiece(1, 2, 0.0, 0.1875),)


def test_build_canonical_minimum_frequency():

    assignment = build_canonical(TAU, 3, 0.9375, slot=1.0)

    assert assignment.kappas == (2, 0)
    assert [piece.task for piece in assignment.pieces] == [0, 1]
    assert [piece.processor for piece in assignment.pieces] == [2, 2]

    for i, share_expected in enumerate([0.2, 0.8]):
        assert math.isclose(assignment.shares[i], share_expected)
        assert math.isclose(assignment.busy_time(i), assignment.kappas[i] + share_expected)


def test_build_canonical_wrap_around():

    assignment = build_canonical(TAU_WRAP, 2, 1.0, slot=1.0)

    assert assignment.kappas == (0, 0, 0)
    assert [(piece.task, piece.processor) for piece in assignment.pieces] == [(0, 0), (1, 0), (1, 1), (2, 1)]

    # The split share runs at the end of one processor and the start of the next, never both at once.
    first, second = assignment.pieces[1], assignment.pieces[2]

    assert second.start == 0.0
    assert first.end == 1.0
    assert second.end <= first.start

    for i in range(3):
        assert math.isclose(assignment.busy_time(i), 2 / 3)

    _, verdict = simulate(assignment, TAU_WRAP)

    assert verdict.is_schedulable


def test_build_canonical_infeasible():

    message = "The system is not feasible on 3 processors at frequency 0.9."

    with pytest.raises(InfeasibleAtFrequencyError, match=message):
        build_canonical(TAU, 3, 0.9)


def test_build_canonical_unchecked(caplog):

    with caplog.at_level(logging.WARNING, logger='skmalleable.schedule'):
        assignment = build_canonical(TAU, 3, 0.9, slot=1.0, check=False)

    assert "clipped" in caplog.text
    assert math.isclose(sum(assignment.shares), 1.0)

    trace, verdict = simulate(assignment, TAU)

    assert not verdict.is_schedulable
    assert {job.task for job in verdict.misses} == {1}
    assert not verdict.gang_violations
    assert not verdict.processor_violations


@pytest.mark.parametrize(
    "m, slot, error_expected, message_expected",
    [
        (3, 3.0, ValueError, "The slot must divide every period."),
        (3, 0.0, ValueError, "The slot must be positive."),
        (3, -1.0, ValueError, "The slot must be positive."),
        (0, None, ValueError, "The number of processors must be between 1 and the speedup capacity."),
        (4, None, ValueError, "The number of processors must be between 1 and the speedup capacity."),
    ],
)
def test_build_canonical_failure(m, slot, error_expected, message_expected):

    with pytest.raises(error_expected, match=message_expected):
        build_canonical(TAU, m, 1.0, slot=slot)


@pytest.mark.parametrize("f, m", [(1.0, 3), (0.9375, 3), (2.0, 2), (3.0, 1)])
def test_simulate_schedulable(f, m):

    trace, verdict = simulate(build_canonical(TAU, m, f), TAU)

    assert verdict.is_schedulable
    assert trace.horizon == 4.0
    assert trace.n_slots == 16

    for job in trace.jobs:
        assert job.work >= job.demand * (1 - 1e-9)


def test_simulate_horizon():

    trace, _ = simulate(build_canonical(TAU, 3, 1.0), TAU, horizon=12)

    assert trace.n_slots == 48
    assert len(trace.jobs) == 6
    assert [job.arrival for job in trace.jobs if job.task == 0] == [0.0, 4.0, 8.0]


@pytest.mark.parametrize(
    "horizon, message_expected",
    [
        (2.0, "The horizon must cover at least one hyperperiod."),
        (4.1, "The horizon must be a multiple of the slot."),
    ],
)
def test_simulate_failure(horizon, message_expected):

    with pytest.raises(ValueError, match=message_expected):
        simulate(build_canonical(TAU, 3, 1.0), TAU, horizon=horizon)


def test_simulate_wrong_system():

    with pytest.raises(ValueError, match="The assignment must have one entry per task."):
        simulate(build_canonical(TAU, 3, 1.0), TaskSystem([Task(1, 4, [1.0, 1.5, 2.0])]))


def test_simulate_gang_violation():

    # Task 1 holds no processor in the last quarter of the slot although kappa is 1.
    assignment = CanonicalAssignment(
        n_cores=3,
        frequency=1.0,
        slot=4.0,
        kappas=(2, 1),
        shares=(0.0, 0.0),
        dedicated=((0, 1), ()),
        pieces=(SharePiece(1, 2, 0.0, 3.0),),
    )

    _, verdict = simulate(assignment, TAU)

    assert verdict.gang_violations == ((1, 3.0),)
    assert not verdict.processor_violations


@pytest.mark.parametrize(
    "pieces, violations_expected",
    [
        ((SharePiece(1, 2, 0.0, 3.0), SharePiece(0, 2, 2.0, 4.0)), ((2, 2.0),)),
        ((SharePiece(1, 1, 0.0, 3.0),), ((1, 0.0),)),
    ],
)
def test_simulate_processor_violation(pieces, violations_expected):

    assignment = CanonicalAssignment(
        n_cores=3,
        frequency=1.0,
        slot=4.0,
        kappas=(2, 0),
        shares=(0.0, 0.75),
        dedicated=((0, 1), ()),
        pieces=pieces,
    )

    _, verdict = simulate(assignment, TAU)

    assert verdict.processor_violations == violations_expected


def test_write_trace(tmp_path):

    path = tmp_path / 'trace.csv'
    trace, _ = simulate(build_canonical(TAU, 3, 1.0, slot=4), TAU)

    write_trace(trace, path)

    lines = path.read_text().splitlines()

    assert lines[0] == "slot_start,slot_end,processor,task"
    assert lines[1:4] == ["0.0,3.0,0,0", "0.0,3.0,1,0", "0.0,3.0,2,1"]
    assert lines[-1] == "3.0,4.0,2,IDLE"
    assert len(lines) == 7
