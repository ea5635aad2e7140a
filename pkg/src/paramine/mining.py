"""Candidate pair enumeration, ranking, and training-set quality estimation.

Candidates are unordered pairs of distinct target phrases that share at
least one pivot translation somewhere; scoring outside this universe is
zero or undefined, so nothing is lost by never enumerating it. A ranked
list plus a sparse annotated sample yields a cumulative quality curve,
from which corpus sizes at accuracy thresholds are read off.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from paramine.annotation import CATEGORIES
from paramine.counts import CooccurrenceTable, PivotKey, merge_tables
from paramine.errors import MissingPairError
from paramine.scoring import SYMMETRIC_SCHEMES, score_pair


@dataclass(slots=True)
class CandidatePair:
    """An unordered pair of target phrases, canonically ordered by bytes."""

    phrase_lo: str
    phrase_hi: str
    support_langs: frozenset[str] = frozenset()
    scores: dict[str, float] = field(default_factory=dict)
    n_support: int = 0

    def __post_init__(self) -> None:
        if self.phrase_lo >= self.phrase_hi:
            raise ValueError(
                f"pair not canonical: {self.phrase_lo!r} must sort before {self.phrase_hi!r}"
            )
        if self.support_langs and not self.n_support:
            self.n_support = len(self.support_langs)

    @property
    def key(self) -> tuple[str, str]:
        return (self.phrase_lo, self.phrase_hi)


@dataclass(slots=True)
class RankedList:
    """Candidates in non-increasing score order under one scheme."""

    scheme: str
    entries: list[CandidatePair]


def enumerate_candidates(
    tables: Sequence[CooccurrenceTable],
    min_support: int = 1,
) -> list[CandidatePair]:
    """Every unordered pair of distinct target phrases sharing a pivot.

    ``support_langs`` collects the pivot languages in which some shared
    translation exists; pairs supported by fewer than ``min_support``
    languages are dropped. Output is sorted by canonical pair, so the
    enumeration is deterministic regardless of table iteration order.
    """
    if min_support < 1:
        raise ValueError(f"min_support must be >= 1, got {min_support}")
    support: dict[tuple[str, str], set[str]] = {}
    for table in tables:
        by_pivot: dict[PivotKey, list[str]] = {}
        for target, row in table.joint.items():
            for pivot in row:
                by_pivot.setdefault(pivot, []).append(target)
        for pivot, targets in by_pivot.items():
            if len(targets) < 2:
                continue
            targets.sort()
            for i in range(len(targets) - 1):
                for j in range(i + 1, len(targets)):
                    support.setdefault((targets[i], targets[j]), set()).add(pivot[0])
    pairs = [
        CandidatePair(lo, hi, support_langs=frozenset(langs))
        for (lo, hi), langs in support.items()
        if len(langs) >= min_support
    ]
    pairs.sort(key=lambda pair: pair.key)
    return pairs


def rank(
    candidates: Sequence[CandidatePair],
    tables: Sequence[CooccurrenceTable],
    scheme: str,
) -> RankedList:
    """Order candidates by a symmetric scheme, highest score first.

    Ties break on the canonical pair's byte order, so equal inputs always
    produce byte-identical rankings. The asymmetric conditional
    probability is refused: a release ranking must not depend on which
    side of a pair comes first.
    """
    if scheme == "cond_prob":
        raise ValueError("asymmetric scheme not rankable")
    if scheme not in SYMMETRIC_SCHEMES:
        raise ValueError(f"unknown scheme: {scheme!r}")
    merged = None
    if scheme != "sum_pmi":
        merged = tables[0] if len(tables) == 1 else merge_tables(tables)
    entries = list(candidates)
    for pair in entries:
        pair.scores[scheme] = score_pair(scheme, tables, pair.phrase_lo, pair.phrase_hi, merged=merged)
    entries.sort(key=lambda pair: (-pair.scores[scheme], pair.phrase_lo, pair.phrase_hi))
    return RankedList(scheme=scheme, entries=entries)


@dataclass(slots=True)
class CurvePoint:
    """Cumulative annotated-category tallies at one global rank.

    Counts are exact integers; fractions are derived views. ``n_annotated``
    includes trash judgments, so the four category fractions may sum to
    less than one.
    """

    rank: int
    n_annotated: int
    n_good: int
    n_mostly_good: int
    n_mostly_bad: int
    n_bad: int

    def fraction(self, category: str) -> float:
        count = {
            "good": self.n_good,
            "mostly_good": self.n_mostly_good,
            "mostly_bad": self.n_mostly_bad,
            "bad": self.n_bad,
        }[category]
        return count / self.n_annotated

    @property
    def acceptable_fraction(self) -> float:
        """Fraction judged good or mostly good so far."""
        return (self.n_good + self.n_mostly_good) / self.n_annotated

    def acceptable_exact(self) -> Fraction:
        return Fraction(self.n_good + self.n_mostly_good, self.n_annotated)


def quality_curve(
    ranked: RankedList,
    sample: Mapping[tuple[str, str], str],
) -> list[CurvePoint]:
    """Walk a ranked list and emit cumulative category fractions at each
    annotated pair's global rank.

    The sample maps canonical pairs to categories; every sampled pair must
    occur in the ranked list.
    """
    for key, category in sample.items():
        if category not in CATEGORIES:
            raise ValueError(f"unknown category {category!r} for pair {key}")
    counts = {category: 0 for category in CATEGORIES}
    points: list[CurvePoint] = []
    seen = 0
    for global_rank, entry in enumerate(ranked.entries, start=1):
        category = sample.get(entry.key)
        if category is None:
            continue
        seen += 1
        counts[category] += 1
        points.append(
            CurvePoint(
                rank=global_rank,
                n_annotated=seen,
                n_good=counts["good"],
                n_mostly_good=counts["mostly_good"],
                n_mostly_bad=counts["mostly_bad"],
                n_bad=counts["bad"],
            )
        )
    if seen < len(sample):
        ranked_keys = {entry.key for entry in ranked.entries}
        missing = sorted(key for key in sample if key not in ranked_keys)
        raise MissingPairError(f"annotated pairs missing from ranked list: {missing}")
    return points


def cutoff_size(curve: Sequence[CurvePoint], threshold: float) -> int | None:
    """Largest global rank whose cumulative good-or-mostly-good fraction
    still meets ``threshold``; None when no point qualifies.

    Exact rational comparison, so a fraction exactly at the threshold
    qualifies.
    """
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    bound = Fraction(str(threshold))
    best: int | None = None
    for point in curve:
        if point.acceptable_exact() >= bound:
            best = point.rank
    return best


def sample_uniform(ranked: RankedList, n: int, seed: int) -> list[CandidatePair]:
    """Uniform sample of candidates (without replacement) for annotation."""
    rng = random.Random(seed)
    k = min(n, len(ranked.entries))
    return rng.sample(ranked.entries, k)
