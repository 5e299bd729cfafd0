"""Regenerate the Equity Evaluation Corpus and audit sentiment systems for gender and race bias."""

from .corpus import Corpus, SentenceRecord, emit_corpus, expand_template, generate_corpus, read_corpus
from .lexicons import Lexicons, load_lexicons
from .pairing import (
    ComparisonUnit,
    Dimension,
    SubsetSpec,
    Task,
    build_gender_comparisons,
    build_race_comparisons,
    filter_comparisons,
)
from .predictions import PredictionSet, validate_predictions
from .stats import (
    BiasGroup,
    aggregate_groups,
    bonferroni_threshold,
    box_stats,
    classify_and_summarize,
    compute_deltas,
    paired_t_test,
)
from .synth import BiasSpec, synth_predictions
from .tdist import student_t_two_tailed_p

__version__ = "0.1.0"

__all__ = [
    "BiasGroup", "BiasSpec", "ComparisonUnit", "Corpus", "Dimension", "Lexicons", "PredictionSet",
    "SentenceRecord", "SubsetSpec", "Task", "aggregate_groups", "bonferroni_threshold", "box_stats",
    "build_gender_comparisons", "build_race_comparisons", "classify_and_summarize", "compute_deltas",
    "emit_corpus", "expand_template", "filter_comparisons", "generate_corpus", "load_lexicons",
    "paired_t_test", "read_corpus", "student_t_two_tailed_p", "synth_predictions", "validate_predictions",
]
