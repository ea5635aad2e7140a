"""Readers and writers for the pipeline's TSV artifacts.

Every artifact this package produces (ranked lists, curves, reports,
gold sets) starts with a `#`-prefixed build header so a file identifies
the tool version that wrote it. Partitioned bitext files are the one
exception: they must stay in the input line format. Floats are written
with repr(), which round-trips exactly, so identical runs produce
byte-identical files.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence, TextIO

from paramine.bitext import normalize_phrase
from paramine.errors import ParamineError
from paramine.mining import CandidatePair, CurvePoint, RankedList
from paramine.version import BUILD_ID

HEADER = f"# {BUILD_ID}"


def _open_out(path: str | os.PathLike[str]) -> TextIO:
    return open(path, "w", encoding="utf-8", newline="\n")


def _data_lines(path: str | os.PathLike[str]) -> Iterable[tuple[int, str]]:
    """Yield (1-based line number, line) for non-empty, non-comment lines."""
    with open(path, encoding="utf-8") as stream:
        for lineno, raw in enumerate(stream, start=1):
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            yield lineno, line


def _comment_lines(path: str | os.PathLike[str]) -> list[str]:
    out = []
    with open(path, encoding="utf-8") as stream:
        for raw in stream:
            if raw.startswith("#"):
                out.append(raw.rstrip("\n"))
    return out


def write_ranked(path: str | os.PathLike[str], ranked: RankedList) -> None:
    """Columns: rank, score, n_support_langs, phrase1, phrase2."""
    with _open_out(path) as out:
        out.write(f"{HEADER}\n")
        out.write(f"# scheme\t{ranked.scheme}\n")
        out.write("# rank\tscore\tn_support_langs\tphrase1\tphrase2\n")
        for position, pair in enumerate(ranked.entries, start=1):
            score = pair.scores[ranked.scheme]
            out.write(
                f"{position}\t{score!r}\t{pair.n_support}\t{pair.phrase_lo}\t{pair.phrase_hi}\n"
            )


def read_ranked(path: str | os.PathLike[str]) -> RankedList:
    scheme = None
    for comment in _comment_lines(path):
        fields = comment[1:].strip().split("\t")
        if len(fields) == 2 and fields[0] == "scheme":
            scheme = fields[1]
    if scheme is None:
        raise ParamineError(f"{path}: missing '# scheme' header")
    entries: list[CandidatePair] = []
    for lineno, line in _data_lines(path):
        fields = line.split("\t")
        if len(fields) != 5:
            raise ParamineError(f"{path}:{lineno}: expected 5 columns, got {len(fields)}")
        _, score, n_support, phrase1, phrase2 = fields
        lo, hi = sorted((phrase1, phrase2))
        entries.append(
            CandidatePair(
                lo,
                hi,
                scores={scheme: float(score)},
                n_support=int(n_support),
            )
        )
    return RankedList(scheme=scheme, entries=entries)


def write_scored(
    path: str | os.PathLike[str],
    scheme: str,
    rows: Sequence[tuple[float, str, str]],
) -> None:
    """Columns: score, phrase1, phrase2."""
    with _open_out(path) as out:
        out.write(f"{HEADER}\n")
        out.write(f"# scheme\t{scheme}\n")
        for score, phrase1, phrase2 in rows:
            out.write(f"{score!r}\t{phrase1}\t{phrase2}\n")


def read_pairs(path: str | os.PathLike[str]) -> list[tuple[str, str]]:
    """Phrase pairs from any artifact whose last two columns are phrases.

    Accepts bare two-column files, scored files, and ranked files. Order
    is preserved and phrases are normalized; pair orientation is kept as
    written.
    """
    pairs: list[tuple[str, str]] = []
    for lineno, line in _data_lines(path):
        fields = line.split("\t")
        if len(fields) < 2:
            raise ParamineError(f"{path}:{lineno}: expected at least 2 columns")
        phrase1 = normalize_phrase(fields[-2])
        phrase2 = normalize_phrase(fields[-1])
        if not phrase1 or not phrase2:
            raise ParamineError(f"{path}:{lineno}: empty phrase")
        pairs.append((phrase1, phrase2))
    return pairs


def write_pairs(path: str | os.PathLike[str], pairs: Sequence[tuple[str, str]]) -> None:
    with _open_out(path) as out:
        out.write(f"{HEADER}\n")
        for phrase1, phrase2 in pairs:
            out.write(f"{phrase1}\t{phrase2}\n")


def read_annotations(path: str | os.PathLike[str]) -> dict[tuple[str, str], str]:
    """Map canonical pair -> category.

    Rows are either `category<TAB>phrase1<TAB>phrase2` or the annotated-set
    export format `pair_id<TAB>label<TAB>phrase1<TAB>phrase2`; in both the
    category is the field before the two phrases. Conflicting duplicate
    rows for one pair are an error.
    """
    # local import: annotation pulls in nothing heavy, but keep files.py
    # importable without it at module load for pipeline ordering
    from paramine.annotation import CATEGORIES, canonical_pair

    out: dict[tuple[str, str], str] = {}
    for lineno, line in _data_lines(path):
        fields = line.split("\t")
        if len(fields) not in (3, 4):
            raise ParamineError(f"{path}:{lineno}: expected 3 or 4 columns, got {len(fields)}")
        category = fields[-3]
        if category not in CATEGORIES:
            raise ParamineError(f"{path}:{lineno}: unknown category {category!r}")
        pair = canonical_pair(normalize_phrase(fields[-2]), normalize_phrase(fields[-1]))
        if pair in out and out[pair] != category:
            raise ParamineError(f"{path}:{lineno}: conflicting category for pair {pair}")
        out[pair] = category
    return out


def write_curve(path: str | os.PathLike[str], points: Sequence[CurvePoint]) -> None:
    """Integer cumulative counts per annotated rank; fractions are derived
    on read, so threshold comparisons downstream stay exact."""
    with _open_out(path) as out:
        out.write(f"{HEADER}\n")
        out.write("# rank\tn_annotated\tn_good\tn_mostly_good\tn_mostly_bad\tn_bad\tacceptable\n")
        for point in points:
            acceptable = point.acceptable_fraction
            out.write(
                f"{point.rank}\t{point.n_annotated}\t{point.n_good}\t{point.n_mostly_good}"
                f"\t{point.n_mostly_bad}\t{point.n_bad}\t{acceptable!r}\n"
            )


def read_curve(path: str | os.PathLike[str]) -> list[CurvePoint]:
    points: list[CurvePoint] = []
    for lineno, line in _data_lines(path):
        fields = line.split("\t")
        if len(fields) != 7:
            raise ParamineError(f"{path}:{lineno}: expected 7 columns, got {len(fields)}")
        points.append(CurvePoint(*(int(field) for field in fields[:6])))
    return points


def write_report(
    path: str | os.PathLike[str],
    rows: Sequence[tuple[str, int, float]],
) -> None:
    """Columns: scheme, k, precision."""
    with _open_out(path) as out:
        out.write(f"{HEADER}\n")
        out.write("# scheme\tk\tprecision\n")
        for scheme, k, precision in rows:
            out.write(f"{scheme}\t{k}\t{precision!r}\n")


def read_report(path: str | os.PathLike[str]) -> list[tuple[str, int, float]]:
    rows: list[tuple[str, int, float]] = []
    for lineno, line in _data_lines(path):
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParamineError(f"{path}:{lineno}: expected 3 columns, got {len(fields)}")
        rows.append((fields[0], int(fields[1]), float(fields[2])))
    return rows
