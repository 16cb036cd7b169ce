from .metrics import ConfusionCounts, EvalMetrics, confusion, metrics
from .overlap import OverlapReport, overlap
from .report import REPORT_SCHEMA, render_report, report_json, report_text
from .sampling import (
    SheetError,
    hand_precision,
    read_sheet,
    sample_for_validation,
    write_sheet,
)
from .similarity import (
    SimilarityStats,
    levenshtein,
    normalized_edit_distance,
    similarity_stats,
    token_length_ratio,
)

__all__ = [
    "ConfusionCounts", "EvalMetrics", "confusion", "metrics",
    "OverlapReport", "overlap",
    "REPORT_SCHEMA", "render_report", "report_json", "report_text",
    "SheetError", "hand_precision", "read_sheet", "sample_for_validation",
    "write_sheet",
    "SimilarityStats", "levenshtein", "normalized_edit_distance",
    "similarity_stats", "token_length_ratio",
]
