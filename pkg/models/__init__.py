"""Models do solver de regressão duplamente esparsa."""

from .experiment_models import (
    METRIC_NAMES,
    BenchOutcome,
    ExperimentReport,
    ExperimentScenario,
    MetricAggregate,
    MetricsRow,
    ReplicationFailure,
    SignalKind,
)
from .solver_models import (
    AdaptiveResult,
    CandidateSummary,
    FitResult,
    ICKind,
    IterationRecord,
    LeastSquaresProjection,
    SolverConfig,
    SolverTrace,
)
from .sparse_models import (
    Dataset,
    GroupStructure,
    ShapeSpec,
    SparseCoefficients,
    ThresholdParams,
)

__all__ = [
    "METRIC_NAMES",
    "AdaptiveResult",
    "BenchOutcome",
    "CandidateSummary",
    "Dataset",
    "ExperimentReport",
    "ExperimentScenario",
    "FitResult",
    "GroupStructure",
    "ICKind",
    "IterationRecord",
    "LeastSquaresProjection",
    "MetricAggregate",
    "MetricsRow",
    "ReplicationFailure",
    "ShapeSpec",
    "SignalKind",
    "SolverConfig",
    "SolverTrace",
    "SparseCoefficients",
    "ThresholdParams",
]
