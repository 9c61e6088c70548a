"""Interactive binary-heatmap evaluation of vision-language predictions."""

from .domain import (
    Dataset,
    DatasetError,
    GroundTruth,
    Keyframe,
    ModelDescriptor,
    MULTI_OBJECT_RECOGNITION,
    Segment,
    TaskDescriptor,
    Vocabulary,
    load_dataset,
    serialize_dataset,
    validate_vocabulary_membership,
)
from .metrics import ConfusionCell, ConfusionSummary, classify_cells, f1_global, micro_f1
from .patterns import PatternReport, checkeredness, detect_patterns
from .providers import (
    PredictionCacheFile,
    PredictionError,
    PredictionGrid,
    load_prediction_cache,
    predict,
)
from .ratings import RatingRecord, read_ratings_csv, ratings_to_csv, write_ratings_csv
from .scheduler import TrialPlan, build_plans, cyclic_square, latin_square
from .session import (
    DisplayGrid,
    EvalSession,
    ModificationSummary,
    SelectedObject,
    SessionError,
    SessionEvent,
)
from .simrater import ExperimentResult, RaterPolicy, run_experiment, simulate_rating
from .stats import (
    TestResult,
    kruskal_wallis,
    linear_r2,
    mann_whitney_u,
    median,
    normalize_ratings,
    pairwise_posthoc,
)

__version__ = "0.1.0"

__all__ = [
    "ConfusionCell",
    "ConfusionSummary",
    "Dataset",
    "DatasetError",
    "DisplayGrid",
    "EvalSession",
    "ExperimentResult",
    "GroundTruth",
    "Keyframe",
    "ModelDescriptor",
    "ModificationSummary",
    "MULTI_OBJECT_RECOGNITION",
    "PatternReport",
    "PredictionCacheFile",
    "PredictionError",
    "PredictionGrid",
    "RaterPolicy",
    "RatingRecord",
    "Segment",
    "SelectedObject",
    "SessionError",
    "SessionEvent",
    "TaskDescriptor",
    "TestResult",
    "TrialPlan",
    "Vocabulary",
    "build_plans",
    "checkeredness",
    "classify_cells",
    "cyclic_square",
    "detect_patterns",
    "f1_global",
    "kruskal_wallis",
    "latin_square",
    "linear_r2",
    "load_dataset",
    "load_prediction_cache",
    "mann_whitney_u",
    "median",
    "micro_f1",
    "normalize_ratings",
    "pairwise_posthoc",
    "predict",
    "read_ratings_csv",
    "ratings_to_csv",
    "run_experiment",
    "serialize_dataset",
    "simulate_rating",
    "validate_vocabulary_membership",
    "write_ratings_csv",
]
