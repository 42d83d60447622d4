"""Cloze-task filler plausibility: data model, score translation, heads,
and ordinal-aware evaluation."""

from .corpus import (
    PLACEHOLDER,
    ClozeInstance,
    Dataset,
    FillerCandidate,
    Label,
    label_to_score,
    load_dataset,
    make_dataset,
)
from .errors import PlausifillError
from .evaluation import (
    EvaluationReport,
    accuracy,
    build_report,
    per_class_f1,
    spearman_rank,
)
from .preprocess import (
    ContextMethod,
    fill_placeholder,
    mlm_adjust_filler,
    render_context,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "PLACEHOLDER",
    "ClozeInstance",
    "ContextMethod",
    "Dataset",
    "EvaluationReport",
    "FillerCandidate",
    "Label",
    "PlausifillError",
    "accuracy",
    "build_report",
    "fill_placeholder",
    "label_to_score",
    "load_dataset",
    "make_dataset",
    "mlm_adjust_filler",
    "per_class_f1",
    "render_context",
    "spearman_rank",
    "tokenize",
    "__version__",
]
