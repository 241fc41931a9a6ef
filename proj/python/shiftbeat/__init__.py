"""Beat tracking evaluation by shifts, insertions and deletions."""

from ._core import *  # noqa: F401,F403
from ._core import (
    BeatSequence,
    Counts,
    EvalConfig,
    MatchingMode,
    OperationKind,
    VariationKind,
    annotation_efficiency,
    evaluate,
    evaluate_all_variations,
    f_measure,
)

__all__ = [
    "BeatSequence",
    "Counts",
    "EvalConfig",
    "MatchingMode",
    "OperationKind",
    "VariationKind",
    "annotation_efficiency",
    "evaluate",
    "evaluate_all_variations",
    "f_measure",
]
