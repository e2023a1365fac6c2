"""
Modelos de datos del sistema.
"""

from .enums import Criterion, EdgeKind, Method, VariableKind, VarianceMode, VarrankScheme
from .errors import (
    AllTiedError,
    ConfigError,
    ConstantColumnError,
    DataError,
    Diagnostic,
    DuplicateHeaderError,
    EmptyTableError,
    EstimationError,
    Flags,
    FoldTooSmallError,
    MixedTypesInColumnError,
    NotContinuousError,
    NotDiscreteError,
    PreconditionError,
    RankDeficientError,
    SameNodeError,
    SchemaError,
    SelectionError,
    SelvarError,
    SingletonPathStepError,
    TooFewRowsError,
    TooFewSamplesError,
    UnknownVariableError,
)
from .fits import CvResult, ElasticNetFit, IndependenceTestResult, OlsFit, VarrankRanking
from .graph import Forest, PathStep
from .reports import (
    ComparisonReport,
    ComparisonRow,
    RunManifest,
    SelectionReport,
    StepScore,
    VariableTest,
)
from .scores import EcScore, EdgeScore, LrTest, MiResult
from .table import CellCounts, GroupStats, MixedDataTable, VariableSpec

__all__ = [
    'Criterion', 'EdgeKind', 'Method', 'VariableKind', 'VarianceMode', 'VarrankScheme',
    'AllTiedError', 'ConfigError', 'ConstantColumnError', 'DataError', 'Diagnostic',
    'DuplicateHeaderError', 'EmptyTableError', 'EstimationError', 'Flags', 'FoldTooSmallError',
    'MixedTypesInColumnError', 'NotContinuousError', 'NotDiscreteError', 'PreconditionError',
    'RankDeficientError', 'SameNodeError', 'SchemaError', 'SelectionError', 'SelvarError',
    'SingletonPathStepError', 'TooFewRowsError', 'TooFewSamplesError', 'UnknownVariableError',
    'CvResult', 'ElasticNetFit', 'IndependenceTestResult', 'OlsFit', 'VarrankRanking',
    'Forest', 'PathStep',
    'ComparisonReport', 'ComparisonRow', 'RunManifest', 'SelectionReport', 'StepScore',
    'VariableTest',
    'EcScore', 'EdgeScore', 'LrTest', 'MiResult',
    'CellCounts', 'GroupStats', 'MixedDataTable', 'VariableSpec',
]
