"""Co-occurrence tables over aligned bitext: c(e), c(f), c(e,f), and N.

All probability estimates used by the ranking schemes are relative
frequencies over these exact integer counts; probabilities are computed
on demand in double precision and never materialized. Pivot phrases are
keyed by ``(pivot_lang, text)`` so identical strings from different pivot
languages never share counts, which makes merging tables across pivot
languages a plain sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from paramine.bitext import AlignedLine
from paramine.errors import EmptyCorpusError

PivotKey = tuple[str, str]


@dataclass(eq=True)
class CooccurrenceTable:
    """Counts for one bitext (or several concatenated bitexts).

    ``joint`` is grouped by target phrase: ``joint[e][(lang, f)]`` is the
    number of lines aligning target ``e`` with pivot ``f`` of ``lang``.
    """

    n_lines: int = 0
    pivot_langs: tuple[str, ...] = ()
    target_counts: dict[str, int] = field(default_factory=dict)
    pivot_counts: dict[PivotKey, int] = field(default_factory=dict)
    joint: dict[str, dict[PivotKey, int]] = field(default_factory=dict)

    def p_target(self, phrase: str) -> float:
        """Prior P(e) = c(e) / N."""
        return self.target_counts[phrase] / self.n_lines

    def p_pivot_given_target(self, pivot: PivotKey, target: str) -> float:
        """P(f | e) = c(e,f) / c(e)."""
        return self.joint[target][pivot] / self.target_counts[target]

    def p_target_given_pivot(self, target: str, pivot: PivotKey) -> float:
        """P(e | f) = c(e,f) / c(f)."""
        return self.joint[target][pivot] / self.pivot_counts[pivot]

    def joint_count(self, target: str, pivot: PivotKey) -> int:
        by_pivot = self.joint.get(target)
        return 0 if by_pivot is None else by_pivot.get(pivot, 0)

    def validate(self) -> None:
        """Check marginal consistency; raises AssertionError on violation."""
        assert sum(self.target_counts.values()) == self.n_lines
        assert sum(self.pivot_counts.values()) == self.n_lines
        joint_total = 0
        pivot_from_joint: dict[PivotKey, int] = {}
        for target, by_pivot in self.joint.items():
            row_total = 0
            for pivot, count in by_pivot.items():
                assert count >= 1
                assert count <= min(self.target_counts[target], self.pivot_counts[pivot])
                row_total += count
                pivot_from_joint[pivot] = pivot_from_joint.get(pivot, 0) + count
            assert row_total == self.target_counts[target]
            joint_total += row_total
        assert joint_total == self.n_lines
        assert pivot_from_joint == self.pivot_counts


def build_table(lines: Iterable[AlignedLine]) -> CooccurrenceTable:
    """Count all lines into a fresh table.

    Identical lines are independent count events; an empty input is an
    error because every probability estimate would be undefined.
    """
    table = CooccurrenceTable()
    langs: set[str] = set()
    targets = table.target_counts
    pivots = table.pivot_counts
    joint = table.joint
    n = 0
    for line in lines:
        n += 1
        langs.add(line.pivot_lang)
        pivot_key = (line.pivot_lang, line.pivot)
        targets[line.target] = targets.get(line.target, 0) + 1
        pivots[pivot_key] = pivots.get(pivot_key, 0) + 1
        row = joint.setdefault(line.target, {})
        row[pivot_key] = row.get(pivot_key, 0) + 1
    if n == 0:
        raise EmptyCorpusError("empty corpus")
    table.n_lines = n
    table.pivot_langs = tuple(sorted(langs))
    return table


def translations_of(table: CooccurrenceTable, target: str) -> dict[PivotKey, int]:
    """All pivot phrases aligned with ``target`` and their joint counts.

    Empty dict for an unseen target.
    """
    return dict(table.joint.get(target, {}))


def merge_tables(tables: Iterable[CooccurrenceTable]) -> CooccurrenceTable:
    """Sum several per-pivot-language tables into one concatenated-bitext table.

    Target phrases accumulate across tables; pivot phrases stay distinct
    per language by construction of the pivot key.
    """
    merged = CooccurrenceTable()
    langs: set[str] = set()
    n_tables = 0
    for table in tables:
        n_tables += 1
        merged.n_lines += table.n_lines
        langs.update(table.pivot_langs)
        for target, count in table.target_counts.items():
            merged.target_counts[target] = merged.target_counts.get(target, 0) + count
        for pivot, count in table.pivot_counts.items():
            merged.pivot_counts[pivot] = merged.pivot_counts.get(pivot, 0) + count
        for target, by_pivot in table.joint.items():
            row = merged.joint.setdefault(target, {})
            for pivot, count in by_pivot.items():
                row[pivot] = row.get(pivot, 0) + count
    if n_tables == 0:
        raise EmptyCorpusError("empty corpus")
    merged.pivot_langs = tuple(sorted(langs))
    return merged


def save_table(table: CooccurrenceTable, path: str | Path, header: str | None = None) -> None:
    """Persist a table as sectioned TSV with byte-deterministic sort order.

    Identical tables always serialize to identical bytes, so table files
    can be diffed directly.
    """
    with Path(path).open("w", encoding="utf-8") as out:
        if header:
            out.write(f"# {header}\n")
        out.write(f"#N\t{table.n_lines}\n")
        out.write("#LANGS\t" + ",".join(table.pivot_langs) + "\n")
        out.write("#TARGET\n")
        for phrase in sorted(table.target_counts):
            out.write(f"{phrase}\t{table.target_counts[phrase]}\n")
        out.write("#PIVOT\n")
        for lang, phrase in sorted(table.pivot_counts):
            out.write(f"{lang}\t{phrase}\t{table.pivot_counts[(lang, phrase)]}\n")
        out.write("#JOINT\n")
        for target in sorted(table.joint):
            row = table.joint[target]
            for lang, phrase in sorted(row):
                out.write(f"{target}\t{lang}\t{phrase}\t{row[(lang, phrase)]}\n")


def load_table(path: str | Path) -> CooccurrenceTable:
    """Read a table written by save_table."""
    table = CooccurrenceTable()
    section = ""
    with Path(path).open("r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if line.startswith("# "):
                continue
            if line.startswith("#N\t"):
                table.n_lines = int(line.split("\t")[1])
                continue
            if line.startswith("#LANGS\t"):
                value = line.split("\t")[1]
                table.pivot_langs = tuple(value.split(",")) if value else ()
                continue
            if line in ("#TARGET", "#PIVOT", "#JOINT"):
                section = line
                continue
            if not line:
                continue
            fields = line.split("\t")
            if section == "#TARGET":
                table.target_counts[fields[0]] = int(fields[1])
            elif section == "#PIVOT":
                table.pivot_counts[(fields[0], fields[1])] = int(fields[2])
            elif section == "#JOINT":
                row = table.joint.setdefault(fields[0], {})
                row[(fields[1], fields[2])] = int(fields[3])
            else:
                raise ValueError(f"table row outside any section: {line!r}")
    if table.n_lines == 0:
        raise EmptyCorpusError(f"empty corpus in table file {path}")
    return table
