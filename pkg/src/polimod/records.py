"""Page-level records shared by the crawler, the extractor, and the CLI."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .model import Topic


@dataclass(frozen=True)
class PageRecord:
    """One retained page: where it came from and why it was kept."""

    url: str
    platform_id: str
    hop: int
    topics: frozenset[Topic]
    matched_keywords: frozenset[tuple[Topic, str]]
    language: str
    fetched_at: str  # RFC 3339
    source: str  # "crawler" | "manual"
    html: Optional[bytes] = field(default=None, repr=False, compare=False)
    blob: Optional[str] = None  # content hash of the stored HTML blob

    def to_manifest_dict(self) -> dict:
        return {
            "url": self.url,
            "platform_id": self.platform_id,
            "hop": self.hop,
            "topics": sorted(t.value for t in self.topics),
            "matched_keywords": sorted(
                [t.value, stem] for t, stem in self.matched_keywords
            ),
            "language": self.language,
            "fetched_at": self.fetched_at,
            "source": self.source,
            "blob": self.blob,
        }

    @classmethod
    def from_manifest_dict(cls, d: dict) -> "PageRecord":
        return cls(
            url=d["url"],
            platform_id=d["platform_id"],
            hop=d["hop"],
            topics=frozenset(Topic.parse(t) for t in d["topics"]),
            matched_keywords=frozenset(
                (Topic.parse(t), stem) for t, stem in d["matched_keywords"]
            ),
            language=d["language"],
            fetched_at=d["fetched_at"],
            source=d["source"],
            blob=d.get("blob"),
        )

    def manifest_line(self) -> str:
        return json.dumps(self.to_manifest_dict(), sort_keys=True)
