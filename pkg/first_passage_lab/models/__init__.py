"""Models for the first passage toolkit."""

from first_passage_lab.models.enums import CheckKind, CheckLevel, KernelType, OutputFormat, Relation
from first_passage_lab.models.errors import (
    FirstPassageError,
    HorizonExhausted,
    HorizonTooSmall,
    InvalidWord,
    InvariantFalsified,
    MismatchedAlphabet,
    TooLarge,
    UsageError,
)
from first_passage_lab.models.word import Autocorrelation, CorrelationClass, PairProfile, StructureProfile, Word
from first_passage_lab.models.series import CountSeries, ExactProbability, HitCurve, ReturnCurve, SurvivalCurve
from first_passage_lab.models.crossing import BetterThan, CrossingReport, DeltaSeries, IntervalPartition, TowerRanking
from first_passage_lab.models.schedule import HoleSchedule, ScheduleEvaluation, Segment
from first_passage_lab.models.oracle import BruteCounts, EmpiricalHits, MapKernel
from first_passage_lab.models.checks import CheckResult, SuiteReport

__all__ = [
    'Word',
    'Autocorrelation',
    'StructureProfile',
    'PairProfile',
    'CorrelationClass',
    'CountSeries',
    'ExactProbability',
    'HitCurve',
    'ReturnCurve',
    'SurvivalCurve',
    'DeltaSeries',
    'CrossingReport',
    'IntervalPartition',
    'BetterThan',
    'TowerRanking',
    'Segment',
    'HoleSchedule',
    'ScheduleEvaluation',
    'BruteCounts',
    'EmpiricalHits',
    'MapKernel',
    'CheckResult',
    'SuiteReport',
    'Relation',
    'KernelType',
    'CheckKind',
    'CheckLevel',
    'OutputFormat',
    'FirstPassageError',
    'InvalidWord',
    'MismatchedAlphabet',
    'HorizonTooSmall',
    'HorizonExhausted',
    'TooLarge',
    'InvariantFalsified',
    'UsageError',
]
