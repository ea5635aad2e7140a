"""Annotation categories, two-annotator adjudication, and set preparation.

Candidate pairs that differ too little (relative edit distance) are not
worth human labor; accepted pairs get judged by two annotators and the
two judgments are merged: agreement or adjacent categories keep the lower
category, larger disagreement discards the pair, and a trash judgment by
either annotator discards it outright.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence, TypeVar

from paramine.distance import levenshtein

# Annotator-facing categories. The first four are an ordinal scale; trash
# marks wrong language, spelling, or grammar and has no ordinal.
CATEGORIES = ("good", "mostly_good", "mostly_bad", "bad", "trash")
RATED_CATEGORIES = ("good", "mostly_good", "mostly_bad", "bad")
ORDINALS = {"good": 4, "mostly_good": 3, "mostly_bad": 2, "bad": 1}

ADJUDICATED_LABELS = (
    "good",
    "mostly_good",
    "mostly_bad",
    "bad",
    "discarded_trash",
    "discarded_disagree",
)

# The nine summary buckets of an annotated set: the four agreement cells,
# the three adjacent-disagreement cells, and the two discard reasons.
SUMMARY_BUCKETS = (
    "good_good",
    "good_mostly_good",
    "mostly_good_mostly_good",
    "mostly_good_mostly_bad",
    "mostly_bad_mostly_bad",
    "mostly_bad_bad",
    "bad_bad",
    "trash",
    "disagree",
)

BUCKET_LABELS = {
    "good_good": "good",
    "good_mostly_good": "mostly_good",
    "mostly_good_mostly_good": "mostly_good",
    "mostly_good_mostly_bad": "mostly_bad",
    "mostly_bad_mostly_bad": "mostly_bad",
    "mostly_bad_bad": "bad",
    "bad_bad": "bad",
    "trash": "discarded_trash",
    "disagree": "discarded_disagree",
}


def canonical_pair(phrase_a: str, phrase_b: str) -> tuple[str, str]:
    """Unordered pair in its canonical (byte-order) orientation."""
    return (phrase_a, phrase_b) if phrase_a <= phrase_b else (phrase_b, phrase_a)


def pair_id(phrase_a: str, phrase_b: str) -> str:
    """Stable content-hash identifier of an unordered pair.

    Survives re-mining: the id depends only on the two phrases.
    """
    lo, hi = canonical_pair(phrase_a, phrase_b)
    return hashlib.sha1(f"{lo}\t{hi}".encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True, slots=True)
class Judgment:
    """One annotator's category for one pair; ``ts`` is a UTC unix timestamp."""

    pair_id: str
    annotator_id: str
    category: str
    ts: float = field(default_factory=time.time)

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category: {self.category!r}")


def adjudicate_categories(category1: str, category2: str) -> str:
    """Merge two annotators' categories into a final label.

    A trash judgment by either annotator discards the pair; categories at
    most one step apart keep the lower of the two; anything further apart
    is discarded as disagreement.
    """
    for category in (category1, category2):
        if category not in CATEGORIES:
            raise ValueError(f"unknown category: {category!r}")
    if "trash" in (category1, category2):
        return "discarded_trash"
    if abs(ORDINALS[category1] - ORDINALS[category2]) >= 2:
        return "discarded_disagree"
    return category1 if ORDINALS[category1] <= ORDINALS[category2] else category2


def adjudicate(judgment1: Judgment, judgment2: Judgment) -> str:
    """Adjudicate two judgments of the same pair by different annotators."""
    if judgment1.pair_id != judgment2.pair_id:
        raise ValueError(
            f"judgments are for different pairs: {judgment1.pair_id} vs {judgment2.pair_id}"
        )
    if judgment1.annotator_id == judgment2.annotator_id:
        raise ValueError(f"both judgments are by annotator {judgment1.annotator_id!r}")
    return adjudicate_categories(judgment1.category, judgment2.category)


def summary_bucket(category1: str, category2: str) -> str:
    """The summary cell a judgment combination falls into.

    The nine buckets partition all category combinations; the bucket's
    label always equals the adjudicated label.
    """
    label = adjudicate_categories(category1, category2)
    if label == "discarded_trash":
        return "trash"
    if label == "discarded_disagree":
        return "disagree"
    hi, lo = sorted((category1, category2), key=ORDINALS.get, reverse=True)
    return f"{hi}_{lo}"


def relative_edit_filter(
    phrase1: str,
    phrase2: str,
    base_threshold: float = 0.4,
    short_cutoff: int = 24,
    short_threshold: float = 0.6,
) -> bool:
    """Accept a pair for manual annotation only if the sides differ enough.

    The edit distance must be at least ``base_threshold`` times the length
    of the shorter side; below ``short_cutoff`` characters the stricter
    ``short_threshold`` applies, since trivial variations dominate among
    short sentences. Identical strings are always rejected. Threshold
    comparisons are exact rational arithmetic, so a distance exactly on
    the boundary is accepted regardless of float rounding.
    """
    distance = levenshtein(phrase1, phrase2)
    if distance == 0:
        return False
    shorter = min(len(phrase1), len(phrase2))
    threshold = short_threshold if shorter < short_cutoff else base_threshold
    ratio = Fraction(str(threshold))
    return distance * ratio.denominator >= ratio.numerator * shorter


PairLike = TypeVar("PairLike")


def _pair_key(item: object) -> tuple[str, str]:
    if isinstance(item, tuple):
        return canonical_pair(item[0], item[1])
    return canonical_pair(item.phrase_lo, item.phrase_hi)  # type: ignore[attr-defined]


def disjoint_split(
    candidates: Iterable[PairLike],
    train_pairs: set[tuple[str, str]],
    dev_pairs: set[tuple[str, str]],
    target: str,
) -> list[PairLike]:
    """Drop candidates already present in earlier splits, preserving order.

    A dev set must not overlap the training set; a test set must not
    overlap either the training or the dev set.
    """
    if target not in ("dev", "test"):
        raise ValueError(f"target must be 'dev' or 'test', got {target!r}")
    excluded = set(train_pairs)
    if target == "test":
        excluded |= set(dev_pairs)
    return [item for item in candidates if _pair_key(item) not in excluded]


def export_sets(
    judged_pairs: Mapping[tuple[str, str], tuple[str, str]] | Sequence[tuple[str, str, str, str]],
    split: str,
    path: str | Path,
    header: str | None = None,
) -> tuple[int, dict[str, int]]:
    """Write an annotated set file plus its nine-bucket summary trailer.

    ``judged_pairs`` maps a canonical pair to its two judgment categories
    (or is a sequence of ``(phrase_lo, phrase_hi, category1, category2)``
    rows). Discarded pairs are excluded from the body but tallied in the
    summary. Returns ``(kept_count, summary)``.
    """
    if isinstance(judged_pairs, Mapping):
        rows = [(lo, hi, c1, c2) for (lo, hi), (c1, c2) in judged_pairs.items()]
    else:
        rows = list(judged_pairs)
    rows.sort(key=lambda row: (row[0], row[1]))
    summary = {bucket: 0 for bucket in SUMMARY_BUCKETS}
    kept = 0
    with Path(path).open("w", encoding="utf-8") as out:
        if header:
            out.write(f"# {header}\n")
        out.write(f"# split\t{split}\n")
        for lo, hi, category1, category2 in rows:
            bucket = summary_bucket(category1, category2)
            summary[bucket] += 1
            label = BUCKET_LABELS[bucket]
            if label.startswith("discarded"):
                continue
            kept += 1
            out.write(f"{pair_id(lo, hi)}\t{label}\t{lo}\t{hi}\n")
        for bucket in SUMMARY_BUCKETS:
            out.write(f"# summary\t{bucket}\t{summary[bucket]}\n")
        out.write(f"# summary\ttotal\t{len(rows)}\n")
        out.write(f"# summary\tkept\t{kept}\n")
    return kept, summary
