"""The five association scores used to rank candidate paraphrase pairs.

All scores are pure functions of integer co-occurrence counts:

* ``cond_prob``   P(p2 | p1), marginalized over shared pivot translations.
  Asymmetric, kept for diagnostics only; release rankings never use it.
* ``joint_prob``  P(p1, p2) = P(p2 | p1) P(p1). Symmetric; favors pairs of
  frequent phrases.
* ``pmi``         log P(p1, p2) / (P(p1) P(p2)). Symmetric; penalizes pairs
  that co-occur mostly by chance, but is brittle on rare misalignments.
* ``joint_times_pmi``  the product of the previous two, balancing their
  failure modes.
* ``sum_pmi``     PMI computed per pivot-language bitext and summed, so a
  pair must look good in several independent corpora to rank high.

Logarithms are natural; ranking order does not depend on the base.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from paramine.counts import CooccurrenceTable, merge_tables
from paramine.errors import NoCooccurrenceError, UnknownPhraseError

SCHEMES = ("cond_prob", "joint_prob", "pmi", "joint_times_pmi", "sum_pmi")

# Schemes usable for release rankings; cond_prob is excluded because a
# paraphrase relation has no direction.
SYMMETRIC_SCHEMES = ("joint_prob", "pmi", "joint_times_pmi", "sum_pmi")


def _require_seen(table: CooccurrenceTable, phrase: str) -> int:
    count = table.target_counts.get(phrase)
    if count is None:
        raise UnknownPhraseError(f"unknown phrase: {phrase!r}")
    return count


def cond_prob(table: CooccurrenceTable, phrase1: str, phrase2: str) -> float:
    """P(phrase2 | phrase1) = sum over shared pivots f of P(phrase2|f) P(f|phrase1).

    Only pivots actually aligned with phrase1 can contribute; iteration is
    in sorted pivot order so the floating-point sum does not depend on
    insertion order. Asymmetric in general.
    """
    count1 = _require_seen(table, phrase1)
    row1 = table.joint.get(phrase1, {})
    row2 = table.joint.get(phrase2, {})
    total = 0.0
    for pivot in sorted(row1):
        joint2 = row2.get(pivot)
        if joint2:
            total += (joint2 / table.pivot_counts[pivot]) * (row1[pivot] / count1)
    return total


def joint_prob(table: CooccurrenceTable, phrase1: str, phrase2: str) -> float:
    """P(phrase1, phrase2) = P(phrase2 | phrase1) P(phrase1).

    Computed on the byte-order-canonical orientation of the pair, so the
    result is bit-identical under argument swap; the two factorizations
    agree to floating-point rounding either way.
    """
    _require_seen(table, phrase1)
    _require_seen(table, phrase2)
    lo, hi = (phrase1, phrase2) if phrase1 <= phrase2 else (phrase2, phrase1)
    return cond_prob(table, lo, hi) * table.target_counts[lo] / table.n_lines


def pmi(table: CooccurrenceTable, phrase1: str, phrase2: str) -> float:
    """log P(p1, p2) / (P(p1) P(p2)), natural log.

    The marginals are subtracted in byte-canonical phrase order, so the
    whole computation (joint included) runs identically under argument
    swap and the result is bit-exact symmetric, not merely close.
    Raises NoCooccurrenceError when the pair shares no pivot translation
    (zero joint probability); callers decide the fallback.
    """
    joint = joint_prob(table, phrase1, phrase2)
    if joint == 0.0:
        raise NoCooccurrenceError(f"no co-occurrence: {phrase1!r} / {phrase2!r}")
    lo, hi = (phrase1, phrase2) if phrase1 <= phrase2 else (phrase2, phrase1)
    return math.log(joint) - math.log(table.p_target(lo)) - math.log(table.p_target(hi))


def joint_times_pmi(table: CooccurrenceTable, phrase1: str, phrase2: str) -> float:
    """P(p1, p2) * pmi(p1; p2); sign follows the PMI factor."""
    return joint_prob(table, phrase1, phrase2) * pmi(table, phrase1, phrase2)


def sum_pmi(tables: Sequence[CooccurrenceTable], phrase1: str, phrase2: str) -> float:
    """PMI summed over per-pivot-language tables.

    A table where the pair never co-occurs (or where either phrase is
    unseen) contributes 0 rather than minus infinity; if no table has a
    positive joint probability the pair has no score at all.
    """
    total = 0.0
    supported = False
    for table in tables:
        if phrase1 not in table.target_counts or phrase2 not in table.target_counts:
            continue
        try:
            total += pmi(table, phrase1, phrase2)
        except NoCooccurrenceError:
            continue
        supported = True
    if not supported:
        raise NoCooccurrenceError(
            f"no co-occurrence in any pivot corpus: {phrase1!r} / {phrase2!r}"
        )
    return total


def score_pair(
    scheme: str,
    tables: Sequence[CooccurrenceTable],
    phrase1: str,
    phrase2: str,
    merged: CooccurrenceTable | None = None,
) -> float:
    """Score one pair under a named scheme.

    ``sum_pmi`` works on the per-language tables; every other scheme works
    on their concatenation (pass ``merged`` to reuse a prebuilt one).
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme: {scheme!r}")
    if scheme == "sum_pmi":
        return sum_pmi(tables, phrase1, phrase2)
    if merged is None:
        merged = tables[0] if len(tables) == 1 else merge_tables(tables)
    if scheme == "cond_prob":
        return cond_prob(merged, phrase1, phrase2)
    if scheme == "joint_prob":
        return joint_prob(merged, phrase1, phrase2)
    if scheme == "pmi":
        return pmi(merged, phrase1, phrase2)
    return joint_times_pmi(merged, phrase1, phrase2)
