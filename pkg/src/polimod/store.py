"""Embedded annotation store: an append-only event log replayed into memory.

Every mutation appends one JSON event and fsyncs before acknowledging, so the
current state is always reproducible by replaying the log from empty.  Writes
are serialized by a lock; reads see consistent in-memory snapshots.
"""
from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .model import Codebook, CodePath, canonical_codebook, validate_code


class StoreError(Exception):
    pass


class InvalidCode(StoreError):
    pass


class UnknownPassage(StoreError):
    pass


class SpanOutOfBounds(StoreError):
    pass


class VersionConflict(StoreError):
    pass


class UnknownSegment(StoreError):
    pass


class IllegalTransition(StoreError):
    pass


class SelfReview(StoreError):
    pass


class SchemaViolation(StoreError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


SEGMENT_FIELDS = (
    "id", "platform_id", "topic", "passage_ref", "char_span", "code",
    "coder", "created_at", "status", "note", "version",
)

STATUSES = ("primary", "flagged", "resolved", "excluded_duplicate")

# legal review transitions: action -> (allowed prior statuses, new status)
TRANSITIONS = {
    "flag": (("primary",), "flagged"),
    "resolve": (("flagged",), "resolved"),
    "exclude_duplicate": (("primary", "flagged", "resolved"), "excluded_duplicate"),
    "reinstate": (("excluded_duplicate",), "primary"),
}


@dataclass(frozen=True)
class Segment:
    id: str
    platform_id: str
    topic: str
    passage_ref: tuple[str, int]  # (corpus file path, passage index)
    char_span: tuple[int, int]
    code: str  # normalized leaf path
    coder: str
    created_at: str
    status: str = "primary"
    note: Optional[str] = None
    version: int = 1

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "platform_id": self.platform_id,
            "topic": self.topic,
            "passage_ref": list(self.passage_ref),
            "char_span": list(self.char_span),
            "code": self.code,
            "coder": self.coder,
            "created_at": self.created_at,
            "status": self.status,
            "note": self.note,
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Segment":
        return cls(
            id=d["id"],
            platform_id=d["platform_id"],
            topic=d["topic"],
            passage_ref=(d["passage_ref"][0], d["passage_ref"][1]),
            char_span=(d["char_span"][0], d["char_span"][1]),
            code=d["code"],
            coder=d["coder"],
            created_at=d["created_at"],
            status=d.get("status", "primary"),
            note=d.get("note"),
            version=d.get("version", 1),
        )


@dataclass(frozen=True)
class ReviewAction:
    segment_id: str
    reviewer: str
    action: str
    note: Optional[str] = None
    at: Optional[str] = None


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class PassageIndex:
    """Lookup of corpus passages for span validation, keyed by relative path."""

    def __init__(self, corpus_root: Optional[Path] = None):
        self.root = Path(corpus_root) if corpus_root else None
        self._cache: dict[str, list[str]] = {}

    def passage_text(self, ref: tuple[str, int]) -> Optional[str]:
        if self.root is None:
            return None
        from .extractor import parse_corpus_file

        rel, idx = ref
        if rel not in self._cache:
            path = self.root / rel
            if not path.is_file():
                raise UnknownPassage(rel)
            self._cache[rel] = [p.text for p in parse_corpus_file(path).passages]
        texts = self._cache[rel]
        if idx < 0 or idx >= len(texts):
            raise UnknownPassage(f"{rel}[{idx}]")
        return texts[idx]


class AnnotationStore:
    """Single-file segment store with optimistic versioning and audit trail."""

    def __init__(self, path: Path, corpus_root: Optional[Path] = None,
                 codebook: Optional[Codebook] = None):
        self.path = Path(path)
        self.codebook = codebook or canonical_codebook()
        self.passages = PassageIndex(corpus_root)
        self._lock = threading.Lock()
        self._segments: dict[str, Segment] = {}
        self._audit: dict[str, list[dict]] = {}
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if self.path.exists():
            self._replay()

    def _replay(self) -> None:
        for line in self.path.read_text("utf-8").splitlines():
            if line.strip():
                self._apply(json.loads(line))

    def _apply(self, event: dict) -> None:
        if event["op"] == "segment":
            seg = Segment.from_dict(event["segment"])
            self._segments[seg.id] = seg
        elif event["op"] == "review":
            seg = self._segments[event["segment_id"]]
            self._segments[seg.id] = replace(
                seg, status=event["new_status"], version=seg.version + 1
            )
            self._audit.setdefault(seg.id, []).append(event)

    def _append(self, event: dict) -> None:
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    # -- writes ------------------------------------------------------------

    def upsert_segment(self, seg: Segment, validate_passage: bool = True) -> Segment:
        path = self.codebook.parse_path_or_none(seg.code)
        if path is None or not validate_code(path, self.codebook):
            raise InvalidCode(seg.code)
        if seg.char_span[0] < 0 or seg.char_span[0] >= seg.char_span[1]:
            raise SpanOutOfBounds(str(seg.char_span))
        if validate_passage:
            text = self.passages.passage_text(seg.passage_ref)
            if text is not None and seg.char_span[1] > len(text):
                raise SpanOutOfBounds(str(seg.char_span))
        with self._lock:
            existing = self._segments.get(seg.id) if seg.id else None
            if existing is None:
                stored = replace(
                    seg,
                    id=seg.id or uuid.uuid4().hex,
                    version=1,
                    created_at=seg.created_at or _now(),
                )
            else:
                if seg.version != existing.version:
                    raise VersionConflict(
                        f"{seg.id}: expected {existing.version}, got {seg.version}"
                    )
                stored = replace(seg, version=existing.version + 1)
            event = {"op": "segment", "segment": stored.to_dict()}
            self._apply(event)
            self._append(event)
            return stored

    def review(self, action: ReviewAction) -> Segment:
        with self._lock:
            seg = self._segments.get(action.segment_id)
            if seg is None:
                raise UnknownSegment(action.segment_id)
            if action.action not in TRANSITIONS:
                raise IllegalTransition(action.action)
            allowed, new_status = TRANSITIONS[action.action]
            if seg.status not in allowed:
                raise IllegalTransition(f"{seg.status} -> {action.action}")
            if action.action == "flag" and action.reviewer == seg.coder:
                raise SelfReview(action.reviewer)
            event = {
                "op": "review",
                "segment_id": seg.id,
                "action": action.action,
                "reviewer": action.reviewer,
                "note": action.note,
                "at": action.at or _now(),
                "new_status": new_status,
            }
            self._apply(event)
            self._append(event)
            return self._segments[seg.id]

    # -- reads -------------------------------------------------------------

    def get(self, segment_id: str) -> Segment:
        seg = self._segments.get(segment_id)
        if seg is None:
            raise UnknownSegment(segment_id)
        return seg

    def audit_trail(self, segment_id: str) -> list[dict]:
        return list(self._audit.get(segment_id, []))

    def segments(self, status: Optional[str] = None, coder: Optional[str] = None,
                 platform: Optional[str] = None, topic: Optional[str] = None
                 ) -> list[Segment]:
        out = []
        for seg in self._segments.values():
            if status and seg.status != status:
                continue
            if coder and seg.coder != coder:
                continue
            if platform and seg.platform_id != platform:
                continue
            if topic and seg.topic != topic:
                continue
            out.append(seg)
        out.sort(key=lambda s: (s.created_at, s.id))
        return out

    # -- export / import ---------------------------------------------------

    def export_segments(self, **filters) -> Iterator[str]:
        """Newline-delimited JSON, one segment per line, stable field order."""
        for seg in self.segments(**filters):
            d = seg.to_dict()
            yield json.dumps({k: d[k] for k in SEGMENT_FIELDS})

    def import_segments(self, stream: Iterable[str] | str) -> int:
        """Idempotent on id; returns the number of lines ingested.  The whole
        stream is validated before any event is applied, then appended as a
        single batch (one fsync, not one per line)."""
        if isinstance(stream, str):
            stream = stream.splitlines()
        events = []
        for line_no, line in enumerate(stream, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                d = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaViolation(line_no, str(exc))
            missing = [k for k in SEGMENT_FIELDS if k not in d]
            if missing:
                raise SchemaViolation(line_no, f"missing fields: {missing}")
            seg = Segment.from_dict(d)
            path = self.codebook.parse_path_or_none(seg.code)
            if path is None or not validate_code(path, self.codebook):
                raise SchemaViolation(line_no, f"invalid code {seg.code!r}")
            events.append({"op": "segment", "segment": seg.to_dict()})
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                for event in events:
                    self._apply(event)
                    fh.write(json.dumps(event, sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        return len(events)
