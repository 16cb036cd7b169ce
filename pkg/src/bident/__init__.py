"""bident: paraphrase mining from NLI corpora via bidirectional entailment,
and cleaning of paraphrase-identification datasets."""

__version__ = "0.1.0"

from .cleaning import CleaningRecord, CleaningResult, ParaphraseCleaner, clean
from .corpus import carve_validation, load_dataset, split_half
from .extraction import (
    DecisionRule,
    ExtractionRecord,
    ExtractionResult,
    ParaphraseExtractor,
    decide,
    extract,
    parse_rule,
    select_entailed,
)
from .records import DatasetSplit, NLIRecord, ParaRecord
from .scoring import LabelDistribution, ScorerDescriptor, build_scorer

__all__ = [
    "__version__",
    "CleaningRecord", "CleaningResult", "ParaphraseCleaner", "clean",
    "carve_validation", "load_dataset", "split_half",
    "DecisionRule", "ExtractionRecord", "ExtractionResult",
    "ParaphraseExtractor", "decide", "extract", "parse_rule", "select_entailed",
    "DatasetSplit", "NLIRecord", "ParaRecord",
    "LabelDistribution", "ScorerDescriptor", "build_scorer",
]
