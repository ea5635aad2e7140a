"""Annotation backend: task assignment, judgment intake, adjudication.

Every pair is judged by two distinct annotators. The board hands out
assignment leases; a pair abandoned past its lease returns to the pool
for someone else. Leases are advisory and in-memory; the hard invariant,
enforced at submit time under one lock, is that no pair ever stores a
third judgment and no annotator judges a pair twice. Restart rebuilds
all durable state from the judgment log alone (open leases are simply
forgotten, and the client refetches on the resulting conflict).
"""

from __future__ import annotations

import json
import mimetypes
import os
import random
import threading
import time
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Callable, Sequence
from urllib.parse import parse_qs, urlsplit

from paramine.annotation import CATEGORIES, Judgment, adjudicate, pair_id
from paramine.errors import ConflictError
from paramine.files import read_pairs
from paramine.store import JudgmentStore

DEFAULT_LEASE_SECONDS = 24 * 3600.0


@dataclass(frozen=True, slots=True)
class AnnotationTask:
    """Wire shape of one assignment."""

    pair_id: str
    phrase1: str
    phrase2: str


@dataclass(frozen=True, slots=True)
class QueuePair:
    pair_id: str
    phrase1: str
    phrase2: str


def load_queue(
    path: str | os.PathLike[str],
    shuffle_seed: int | None = None,
) -> list[QueuePair]:
    """Annotation queue from any pairs-bearing TSV artifact.

    Keeps file order (usually rank order from mining) unless a shuffle
    seed is given; duplicates and identity pairs are dropped.
    """
    queue: list[QueuePair] = []
    seen: set[str] = set()
    for phrase1, phrase2 in read_pairs(path):
        if phrase1 == phrase2:
            continue
        pid = pair_id(phrase1, phrase2)
        if pid in seen:
            continue
        seen.add(pid)
        queue.append(QueuePair(pid, phrase1, phrase2))
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(queue)
    return queue


class TaskBoard:
    """Linearizable assignment and judgment intake over one queue.

    All public methods take the single internal lock, so any interleaving
    of concurrent annotators observes a total order of operations.
    """

    MAX_JUDGES = 2

    def __init__(
        self,
        queue: Sequence[QueuePair],
        store: JudgmentStore,
        lease_seconds: float = DEFAULT_LEASE_SECONDS,
        clock: Callable[[], float] = time.time,
    ):
        self.queue = list(queue)
        self.by_id = {pair.pair_id: pair for pair in self.queue}
        self.store = store
        self.lease_seconds = lease_seconds
        self.clock = clock
        self._lock = threading.Lock()
        # pair_id -> annotator_id -> lease expiry
        self._leases: dict[str, dict[str, float]] = {}
        # pairs ever offered to an annotator; an annotator never sees a pair twice
        self._offered: set[tuple[str, str]] = set()

    def _expire_leases(self, now: float) -> None:
        for pid in list(self._leases):
            holders = self._leases[pid]
            for annotator in list(holders):
                if holders[annotator] <= now:
                    del holders[annotator]
            if not holders:
                del self._leases[pid]

    def _slots_taken(self, pid: str, annotator_id: str) -> int:
        judged = self.store.annotators_for(pid)
        leased = set(self._leases.get(pid, ()))
        return len((judged | leased) - {annotator_id})

    def next_task(self, annotator_id: str) -> AnnotationTask | None:
        if not annotator_id:
            raise ValueError("annotator id must be non-empty")
        with self._lock:
            now = self.clock()
            self._expire_leases(now)
            # first complete half-judged pairs, then open fresh ones
            for want_partial in (True, False):
                for pair in self.queue:
                    n_judged = self.store.judgment_count(pair.pair_id)
                    if (n_judged == 1) != want_partial or n_judged >= self.MAX_JUDGES:
                        continue
                    if (pair.pair_id, annotator_id) in self._offered:
                        continue
                    if self.store.find(pair.pair_id, annotator_id) is not None:
                        continue
                    if self._slots_taken(pair.pair_id, annotator_id) >= self.MAX_JUDGES:
                        continue
                    self._leases.setdefault(pair.pair_id, {})[annotator_id] = (
                        now + self.lease_seconds
                    )
                    self._offered.add((pair.pair_id, annotator_id))
                    return AnnotationTask(pair.pair_id, pair.phrase1, pair.phrase2)
            return None

    def submit(self, annotator_id: str, pid: str, category: str) -> bool:
        """Record one judgment; True if stored, False on an idempotent repeat."""
        if not annotator_id:
            raise ValueError("annotator id must be non-empty")
        if category not in CATEGORIES:
            raise ValueError(f"unknown category: {category!r}")
        with self._lock:
            if pid not in self.by_id:
                raise ConflictError(f"unknown pair: {pid}")
            existing = self.store.find(pid, annotator_id)
            if existing is not None:
                if existing.category == category:
                    return False
                raise ConflictError(
                    f"pair {pid} already judged by {annotator_id!r} as {existing.category}"
                )
            if (pid, annotator_id) not in self._offered:
                raise ConflictError(f"pair {pid} was not assigned to {annotator_id!r}")
            if self.store.judgment_count(pid) >= self.MAX_JUDGES:
                raise ConflictError(f"pair {pid} already has two judgments")
            self.store.append(
                Judgment(pair_id=pid, annotator_id=annotator_id, category=category, ts=self.clock())
            )
            holders = self._leases.get(pid)
            if holders is not None:
                holders.pop(annotator_id, None)
                if not holders:
                    del self._leases[pid]
            return True

    def progress(self) -> dict[str, int]:
        with self._lock:
            counts = {"pairs": len(self.queue), "unjudged": 0, "partial": 0, "complete": 0}
            for pair in self.queue:
                n_judged = min(self.store.judgment_count(pair.pair_id), self.MAX_JUDGES)
                counts[("unjudged", "partial", "complete")[n_judged]] += 1
            counts["judgments"] = len(self.store)
            return counts

    def adjudicate_all(self) -> dict[str, str]:
        with self._lock:
            return adjudicate_store(self.store)


def adjudicate_store(store: JudgmentStore) -> dict[str, str]:
    """Final labels for every pair with exactly two judgments."""
    labels: dict[str, str] = {}
    for pid in sorted(store.by_pair):
        judgments = store.judgments_for(pid)
        if len(judgments) == 2:
            labels[pid] = adjudicate(judgments[0], judgments[1])
    return labels


def make_handler(
    board: TaskBoard,
    static_dir: str | None = None,
    quiet: bool = True,
) -> type[BaseHTTPRequestHandler]:
    static_root = os.path.realpath(static_dir) if static_dir else None

    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, format: str, *args: object) -> None:
            if not quiet:
                BaseHTTPRequestHandler.log_message(self, format, *args)

        def _send_json(self, code: int, payload: object) -> None:
            body = json.dumps(payload, ensure_ascii=False, sort_keys=True).encode("utf-8")
            self.send_response(code)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self) -> None:
            url = urlsplit(self.path)
            if url.path == "/api/task":
                annotator = parse_qs(url.query).get("annotator", [""])[0].strip()
                if not annotator:
                    self._send_json(400, {"error": "missing annotator id"})
                    return
                task = board.next_task(annotator)
                if task is None:
                    self.send_response(204)
                    self.end_headers()
                    return
                self._send_json(
                    200,
                    {"pair_id": task.pair_id, "phrase1": task.phrase1, "phrase2": task.phrase2},
                )
            elif url.path == "/api/progress":
                self._send_json(200, board.progress())
            else:
                self._serve_static(url.path)

        def do_POST(self) -> None:
            url = urlsplit(self.path)
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            if url.path == "/api/judgment":
                try:
                    body = json.loads(raw.decode("utf-8"))
                    annotator = body["annotator"]
                    pid = body["pair_id"]
                    category = body["category"]
                except (ValueError, KeyError, UnicodeDecodeError):
                    self._send_json(400, {"error": "bad judgment body"})
                    return
                try:
                    stored = board.submit(annotator, pid, category)
                except ConflictError as exc:
                    self._send_json(409, {"error": str(exc)})
                    return
                except ValueError as exc:
                    self._send_json(400, {"error": str(exc)})
                    return
                self._send_json(200, {"status": "ok", "stored": stored})
            elif url.path == "/api/adjudicate":
                try:
                    labels = board.adjudicate_all()
                except ValueError as exc:
                    self._send_json(400, {"error": str(exc)})
                    return
                self._send_json(200, labels)
            else:
                self._send_json(404, {"error": "not found"})

        def _serve_static(self, path: str) -> None:
            if static_root is None:
                self._send_json(404, {"error": "not found"})
                return
            relative = path.lstrip("/") or "index.html"
            full = os.path.realpath(os.path.join(static_root, relative))
            if full != static_root and not full.startswith(static_root + os.sep):
                self._send_json(403, {"error": "forbidden"})
                return
            if os.path.isdir(full):
                full = os.path.join(full, "index.html")
            if not os.path.isfile(full):
                self._send_json(404, {"error": "not found"})
                return
            content_type = mimetypes.guess_type(full)[0] or "application/octet-stream"
            with open(full, "rb") as handle:
                body = handle.read()
            self.send_response(200)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return Handler


def build_server(
    board: TaskBoard,
    host: str = "127.0.0.1",
    port: int = 8765,
    static_dir: str | None = None,
    quiet: bool = True,
) -> ThreadingHTTPServer:
    handler = make_handler(board, static_dir=static_dir, quiet=quiet)
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    return server
