import pytest

from skmalleable.objects import (
    FrequencyInterval,
    FrequencyPlan,
    KappaVector,
    PowerModel,
    ProcessorRequirement,
    SharePiece,
    SpeedupVector,
    Task,
    TaskSystem,
)


@pytest.mark.parametrize(
    "obj, repr_expected",
    [
        (SpeedupVector([1.0]), "SpeedupVector([1.])"),
        (SpeedupVector([1.0, 1.5, 2.0]), "SpeedupVector([1. , 1.5, 2. ])"),
        (KappaVector([2, 0]), "KappaVector([2, 0])"),
        (Task(6, 4, [1.0, 1.5, 2.0]), "Task(e=6.0, p=4, speedup=SpeedupVector([1. , 1.5, 2. ]))"),
        (Task(1, 2.0, [1.0]), "Task(e=1.0, p=2, speedup=SpeedupVector([1.]))"),
        (
            TaskSystem([Task(1, 2, [1.0]), Task(3, 4, [2.0])]),
            "TaskSystem([Task(e=1.0, p=2, speedup=SpeedupVector([1.])), "
            "Task(e=3.0, p=4, speedup=SpeedupVector([2.]))])",
        ),
        (
            PowerModel([1.0, 2.0], [[10.0, 15.0], [20.0, 30.0]], reference_frequency=2.0),
            "PowerModel(frequencies=array([1., 2.]), n_cores=2, reference_frequency=2.0)",
        ),
        (FrequencyInterval(0.75, 1.0), "FrequencyInterval(f1=0.75, f2=1.0, left_open=False)"),
        (ProcessorRequirement(1, 0.5), "ProcessorRequirement(kappa=1, fractional=0.5, feasible=True)"),
        (
            FrequencyPlan(3, 0.9375, 1.5, 42.0),
            "FrequencyPlan(active_cores=3, f_min_continuous=0.9375, f_quantized=1.5, power_watts=42.0)",
        ),
        (SharePiece(1, 2, 0.0, 3.0), "SharePiece(task=1, processor=2, start=0.0, end=3.0)"),
    ],
)
def test_repr(obj, repr_expected):

    assert repr(obj) == repr_expected
