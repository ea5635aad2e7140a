"""Parsing, normalization, and year-based partitioning of aligned bitext files.

One input line is one aligned sentence pair: ``target<TAB>pivot`` with an
optional third tab-separated field holding the document year. Phrases are
plain strings normalized to NFC with whitespace runs collapsed; repeated
identical lines are genuine count events and are kept.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, TextIO

_WS_RUN = re.compile(r"\s+")

PARTITIONS = ("train", "dev", "test")


def normalize_phrase(text: str) -> str:
    """NFC-normalize, collapse internal whitespace runs to single spaces, strip.

    No case folding and no tokenization: sentences keep their surface form,
    so two phrases are "the same" only when they are byte-identical after
    this normalization.
    """
    return _WS_RUN.sub(" ", unicodedata.normalize("NFC", text)).strip()


@dataclass(frozen=True, slots=True)
class AlignedLine:
    """A single one-to-one sentence alignment between target and pivot side."""

    target: str
    pivot: str
    pivot_lang: str
    doc_year: int | None = None


def parse_bitext(
    stream: Iterable[str],
    pivot_lang: str,
    skips: list[tuple[int, str]] | None = None,
) -> Iterator[AlignedLine]:
    """Yield one AlignedLine per well-formed input line, in input order.

    Malformed lines (wrong field count, non-integer year, or a side that is
    empty after normalization) are skipped, never fatal; when ``skips`` is
    given, each skip is recorded as ``(line_number, reason)`` with 1-based
    line numbers.
    """
    for lineno, raw in enumerate(stream, start=1):
        fields = raw.rstrip("\n").split("\t")
        if len(fields) not in (2, 3):
            if skips is not None:
                skips.append((lineno, f"expected 2 or 3 tab-separated fields, got {len(fields)}"))
            continue
        year: int | None = None
        if len(fields) == 3:
            try:
                year = int(fields[2])
            except ValueError:
                if skips is not None:
                    skips.append((lineno, f"year field is not an integer: {fields[2]!r}"))
                continue
            if year < 0:
                if skips is not None:
                    skips.append((lineno, f"negative year: {year}"))
                continue
        target = normalize_phrase(fields[0])
        pivot = normalize_phrase(fields[1])
        if not target or not pivot:
            if skips is not None:
                skips.append((lineno, "empty side after normalization"))
            continue
        yield AlignedLine(target=target, pivot=pivot, pivot_lang=pivot_lang, doc_year=year)


def serialize_line(line: AlignedLine) -> str:
    """Inverse of parse_bitext for accepted lines (no trailing newline)."""
    if line.doc_year is None:
        return f"{line.target}\t{line.pivot}"
    return f"{line.target}\t{line.pivot}\t{line.doc_year}"


def assign_partition(doc_year: int | None) -> str:
    """Deterministic train/dev/test assignment by document year.

    Years ending in 4 go to test, years ending in 5 to dev, everything
    else (missing year included) to train.
    """
    if doc_year is None:
        return "train"
    if doc_year % 10 == 4:
        return "test"
    if doc_year % 10 == 5:
        return "dev"
    return "train"


def dedupe_lines(
    lines: Iterable[AlignedLine],
    removed: list[AlignedLine] | None = None,
) -> Iterator[AlignedLine]:
    """Collapse runs of consecutive identical lines to a single line.

    Only consecutive duplicates are removed (file-concatenation artifacts);
    non-consecutive repeats are genuine repeated alignments and feed counts.
    Removed lines are appended to ``removed`` when given.
    """
    prev: AlignedLine | None = None
    for line in lines:
        if line == prev:
            if removed is not None:
                removed.append(line)
            continue
        prev = line
        yield line


def partition_bitext(
    lines: Iterable[AlignedLine],
    out_dir: str | Path,
) -> dict[str, int]:
    """Write train.tsv / dev.tsv / test.tsv under out_dir; return line counts."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    counts = {name: 0 for name in PARTITIONS}
    handles: dict[str, TextIO] = {}
    try:
        for name in PARTITIONS:
            handles[name] = (out_dir / f"{name}.tsv").open("w", encoding="utf-8")
        for line in lines:
            part = assign_partition(line.doc_year)
            handles[part].write(serialize_line(line) + "\n")
            counts[part] += 1
    finally:
        for handle in handles.values():
            handle.close()
    return counts


def read_bitext_file(
    path: str | Path,
    pivot_lang: str,
    skips: list[tuple[int, str]] | None = None,
) -> Iterator[AlignedLine]:
    """Stream AlignedLines from a bitext file."""
    with Path(path).open("r", encoding="utf-8") as handle:
        yield from parse_bitext(handle, pivot_lang, skips=skips)
