"""Sentential paraphrase mining from sentence-aligned parallel corpora.

The pipeline links two same-language sentences whenever both align to a
common translation in one or more pivot languages, ranks the resulting
candidate pairs with count-based association scores, and manages the
human annotation workflow used to measure ranking quality.
"""

from paramine.bitext import (
    AlignedLine,
    PARTITIONS,
    assign_partition,
    dedupe_lines,
    normalize_phrase,
    parse_bitext,
    serialize_line,
)
from paramine.counts import CooccurrenceTable, build_table, merge_tables, translations_of
from paramine.scoring import (
    SCHEMES,
    SYMMETRIC_SCHEMES,
    cond_prob,
    joint_prob,
    joint_times_pmi,
    pmi,
    score_pair,
    sum_pmi,
)
from paramine.mining import (
    CandidatePair,
    CurvePoint,
    RankedList,
    cutoff_size,
    enumerate_candidates,
    quality_curve,
    rank,
    sample_uniform,
)
from paramine.annotation import (
    ADJUDICATED_LABELS,
    CATEGORIES,
    Judgment,
    adjudicate,
    adjudicate_categories,
    canonical_pair,
    disjoint_split,
    export_sets,
    pair_id,
    relative_edit_filter,
    summary_bucket,
)
from paramine.distance import levenshtein
from paramine.synth import SyntheticSpec, generate_synthetic
from paramine.evaluation import SchemeReport, evaluate_on_annotated, evaluate_schemes, precision_at_k
from paramine.version import __version__

__all__ = [
    "AlignedLine",
    "PARTITIONS",
    "assign_partition",
    "dedupe_lines",
    "normalize_phrase",
    "parse_bitext",
    "serialize_line",
    "CooccurrenceTable",
    "build_table",
    "merge_tables",
    "translations_of",
    "SCHEMES",
    "SYMMETRIC_SCHEMES",
    "cond_prob",
    "joint_prob",
    "pmi",
    "joint_times_pmi",
    "sum_pmi",
    "score_pair",
    "CandidatePair",
    "CurvePoint",
    "RankedList",
    "enumerate_candidates",
    "rank",
    "quality_curve",
    "cutoff_size",
    "sample_uniform",
    "CATEGORIES",
    "ADJUDICATED_LABELS",
    "Judgment",
    "adjudicate",
    "adjudicate_categories",
    "canonical_pair",
    "pair_id",
    "disjoint_split",
    "export_sets",
    "relative_edit_filter",
    "summary_bucket",
    "levenshtein",
    "SyntheticSpec",
    "generate_synthetic",
    "SchemeReport",
    "evaluate_schemes",
    "evaluate_on_annotated",
    "precision_at_k",
    "__version__",
]
