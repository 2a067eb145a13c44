"""Package containing the task, power and schedule objects."""

from skmalleable.objects.plan import FrequencyPlan, KappaVector
from skmalleable.objects.power_model import EnergyQuote, PowerDiagnostic, PowerModel
from skmalleable.objects.requirement import FrequencyInterval, ProcessorRequirement
from skmalleable.objects.speedup import SpeedupVector
from skmalleable.objects.task import Task, TaskSystem
from skmalleable.objects.trace import CanonicalAssignment, JobRecord, ScheduleTrace, Segment, SharePiece, Verdict

__all__ = [
    'CanonicalAssignment',
    'EnergyQuote',
    'FrequencyInterval',
    'FrequencyPlan',
    'JobRecord',
    'KappaVector',
    'PowerDiagnostic',
    'PowerModel',
    'ProcessorRequirement',
    'ScheduleTrace',
    'Segment',
    'SharePiece',
    'SpeedupVector',
    'Task',
    'TaskSystem',
    'Verdict',
]
