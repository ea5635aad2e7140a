"""Scheme comparison: precision against gold pairs or annotated labels."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from paramine.bitext import AlignedLine
from paramine.counts import CooccurrenceTable, build_table
from paramine.errors import ParamineError
from paramine.mining import CurvePoint, RankedList, enumerate_candidates, quality_curve, rank

POSITIVE_LABELS = frozenset({"good", "mostly_good"})
DEFAULT_KS = (10, 50, 100)


@dataclass(slots=True)
class SchemeReport:
    scheme: str
    precision_at_k: dict[int, float] = field(default_factory=dict)
    truncated: dict[int, bool] = field(default_factory=dict)
    curve: list[CurvePoint] = field(default_factory=list)

    def rows(self) -> list[tuple[str, int, float]]:
        return [(self.scheme, k, self.precision_at_k[k]) for k in sorted(self.precision_at_k)]


def precision_at_k(
    ranked: RankedList,
    gold: set[tuple[str, str]],
    k: int,
) -> tuple[float, bool]:
    """(precision over the top-k prefix, whether the list ran short).

    When fewer than k entries exist, precision is over the available
    prefix and the flag is set.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    prefix = ranked.entries[:k]
    if not prefix:
        return 0.0, True
    hits = sum(1 for pair in prefix if pair.key in gold)
    return hits / len(prefix), len(prefix) < k


def evaluate_schemes(
    bitexts: Mapping[str, Sequence[AlignedLine]] | Sequence[CooccurrenceTable],
    gold: set[tuple[str, str]],
    schemes: Iterable[str],
    ks: Sequence[int] = DEFAULT_KS,
    min_support: int = 1,
) -> list[SchemeReport]:
    """Rank one shared candidate set under each scheme and score it."""
    if not gold:
        raise ValueError("gold pair set is empty")
    if isinstance(bitexts, Mapping):
        tables = [build_table(bitexts[lang]) for lang in sorted(bitexts)]
    else:
        tables = list(bitexts)
    candidates = enumerate_candidates(tables, min_support=min_support)
    reports = []
    for scheme in schemes:
        ranked = rank(candidates, tables, scheme)
        report = SchemeReport(scheme=scheme)
        for k in ks:
            report.precision_at_k[k], report.truncated[k] = precision_at_k(ranked, gold, k)
        reports.append(report)
    return reports


def evaluate_on_annotated(
    ranked: RankedList,
    annotated: Mapping[tuple[str, str], str],
    ks: Sequence[int] = DEFAULT_KS,
) -> SchemeReport:
    """Score a ranking against human labels; good and mostly_good are the
    positive class.

    Precision@k is taken over the first k annotated pairs in rank order
    (annotation is sparse; unannotated entries carry no evidence either
    way). The quality curve is plotted at global ranks as usual.
    """
    overlap = {
        pair.key: annotated[pair.key] for pair in ranked.entries if pair.key in annotated
    }
    if not overlap:
        raise ParamineError("no overlap between ranked list and annotated set")
    report = SchemeReport(scheme=ranked.scheme)
    report.curve = quality_curve(ranked, overlap)
    flags = [
        annotated[pair.key] in POSITIVE_LABELS
        for pair in ranked.entries
        if pair.key in annotated
    ]
    for k in ks:
        prefix = flags[:k]
        report.precision_at_k[k] = sum(prefix) / len(prefix) if prefix else 0.0
        report.truncated[k] = len(prefix) < k
    return report
