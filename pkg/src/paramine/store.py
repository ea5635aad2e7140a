"""Durable append-only judgment log.

One JSON object per line. A judgment is acknowledged only after its full
line, newline included, is flushed and fsynced, so on startup any bytes
after the last newline are an unacknowledged torn write and are safely
truncated. A malformed complete line, by contrast, means real corruption
and loading refuses to guess.
"""

from __future__ import annotations

import json
import os
from typing import IO, Iterator

from paramine.annotation import CATEGORIES, Judgment
from paramine.errors import ParamineError

_FIELDS = ("annotator_id", "category", "pair_id", "ts")


def _encode(judgment: Judgment) -> str:
    record = {
        "pair_id": judgment.pair_id,
        "annotator_id": judgment.annotator_id,
        "category": judgment.category,
        "ts": judgment.ts,
    }
    return json.dumps(record, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def _decode(line: str, where: str) -> Judgment:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParamineError(f"{where}: corrupt judgment record: {exc}") from None
    if not isinstance(record, dict) or not all(key in record for key in _FIELDS):
        raise ParamineError(f"{where}: judgment record missing fields")
    if record["category"] not in CATEGORIES:
        raise ParamineError(f"{where}: unknown category {record['category']!r}")
    return Judgment(
        pair_id=record["pair_id"],
        annotator_id=record["annotator_id"],
        category=record["category"],
        ts=float(record["ts"]),
    )


class JudgmentStore:
    """Judgments in append order, indexed by pair and annotator."""

    def __init__(self, path: str | os.PathLike[str]):
        self.path = os.fspath(path)
        self.judgments: list[Judgment] = []
        self.by_pair: dict[str, list[Judgment]] = {}
        self.truncated_bytes = 0
        self._load()
        self._handle: IO[str] = open(self.path, "a", encoding="utf-8", newline="\n")

    def _load(self) -> None:
        if not os.path.exists(self.path):
            return
        with open(self.path, "rb+") as handle:
            content = handle.read()
            cut = content.rfind(b"\n") + 1
            if cut < len(content):
                self.truncated_bytes = len(content) - cut
                handle.truncate(cut)
                content = content[:cut]
        for lineno, line in enumerate(content.decode("utf-8").splitlines(), start=1):
            if not line.strip():
                continue
            judgment = _decode(line, f"{self.path}:{lineno}")
            self._index(judgment)

    def _index(self, judgment: Judgment) -> None:
        self.judgments.append(judgment)
        self.by_pair.setdefault(judgment.pair_id, []).append(judgment)

    def append(self, judgment: Judgment) -> None:
        self._handle.write(_encode(judgment) + "\n")
        self._handle.flush()
        os.fsync(self._handle.fileno())
        self._index(judgment)

    def find(self, pair_id: str, annotator_id: str) -> Judgment | None:
        for judgment in self.by_pair.get(pair_id, ()):
            if judgment.annotator_id == annotator_id:
                return judgment
        return None

    def judgments_for(self, pair_id: str) -> list[Judgment]:
        return list(self.by_pair.get(pair_id, ()))

    def annotators_for(self, pair_id: str) -> set[str]:
        return {judgment.annotator_id for judgment in self.by_pair.get(pair_id, ())}

    def judgment_count(self, pair_id: str) -> int:
        return len(self.by_pair.get(pair_id, ()))

    def __len__(self) -> int:
        return len(self.judgments)

    def __iter__(self) -> Iterator[Judgment]:
        return iter(self.judgments)

    def close(self) -> None:
        if not self._handle.closed:
            self._handle.close()

    def __enter__(self) -> "JudgmentStore":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()
