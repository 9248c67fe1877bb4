"""Two-hop keyword-gated breadth-first collection from seed links.

Pages are retained when their URL passes the allow/blocklist, their visible
text is English, and at least one topic keyword matches.  Only retained pages
(and seeds, which were hand-curated as relevant) are expanded further.
"""
from __future__ import annotations

import hashlib
import json
import logging
from collections import deque
from dataclasses import dataclass, field
from html.parser import HTMLParser
from pathlib import Path

from . import extractor
from .fetch import FetchError, NonHtmlContent, PolitenessPolicy
from .language import detect_language
from .model import KeywordList, Platform, Topic, canonical_keywords
from .records import PageRecord
from .urls import Rejected, normalize_url, strip_fragment, url_admitted

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Seed:
    url: str
    origin: str = "canonical"  # "canonical" or a topic name for search seeds


@dataclass
class CrawlPlan:
    platform: Platform
    seeds: list[Seed]
    allowlist: list[str]
    blocklist: list[str] = field(default_factory=list)
    max_hops: int = 2
    keyword_lists: list[KeywordList] = field(default_factory=canonical_keywords)
    politeness: PolitenessPolicy = field(default_factory=PolitenessPolicy)
    backend: str = "direct_http"

    def __post_init__(self):
        if not self.seeds:
            raise ValueError("seeds must be non-empty")
        if self.max_hops < 0:
            raise ValueError("max_hops must be >= 0")
        if not self.allowlist:
            raise ValueError("allowlist must be non-empty")


def match_keywords(text: str, lists: list[KeywordList]) -> frozenset[tuple[Topic, str]]:
    """Every (topic, stem) whose stem occurs case-insensitively in ``text``."""
    lowered = text.lower()
    return frozenset(
        (kl.topic, stem) for kl in lists for stem in kl.stems if stem in lowered
    )


class _LinkCollector(HTMLParser):
    def __init__(self):
        super().__init__()
        self.hrefs: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag == "a":
            for name, value in attrs:
                if name == "href" and value:
                    self.hrefs.append(value)


def extract_links(html: bytes | str, base_url: str) -> list[str]:
    """Normalized, deduplicated in-page links, rejects dropped."""
    if isinstance(html, bytes):
        html = html.decode("utf-8", errors="replace")
    collector = _LinkCollector()
    collector.feed(html)
    collector.close()
    out: list[str] = []
    seen: set[str] = set()
    for href in collector.hrefs:
        result = normalize_url(base_url, href)
        if isinstance(result, Rejected):
            continue
        if result not in seen:
            seen.add(result)
            out.append(result)
    return out


class Frontier:
    """BFS queue ordered by (hop, insertion order) with visited-set dedup."""

    def __init__(self):
        self._queue: deque[tuple[str, int]] = deque()
        self.visited: set[str] = set()

    def add(self, url: str, hop: int) -> bool:
        if url in self.visited:
            return False
        self.visited.add(url)
        self._queue.append((url, hop))
        return True

    def pop(self) -> tuple[str, int]:
        return self._queue.popleft()

    def __bool__(self) -> bool:
        return bool(self._queue)


def crawl(plan: CrawlPlan, fetcher) -> list[PageRecord]:
    """Breadth-first crawl from the plan's seeds.

    ``fetcher`` is any object with ``fetch(url) -> FetchResult``.  Per-page
    fetch errors are logged and skipped.  Returns retained pages sorted by
    (hop, url); results are deterministic for a deterministic fetcher.
    """
    frontier = Frontier()
    seed_urls = set()
    for seed in plan.seeds:
        url = strip_fragment(seed.url)
        seed_urls.add(url)
        frontier.add(url, 0)

    retained: list[PageRecord] = []
    while frontier:
        url, hop = frontier.pop()
        is_seed = url in seed_urls and hop == 0
        try:
            result = fetcher.fetch(url)
        except NonHtmlContent as exc:
            log.info("skipping non-HTML page %s (%s)", url, exc)
            continue
        except FetchError as exc:
            log.warning("fetch failed for %s: %s", url, exc)
            continue
        if result.status >= 400:
            log.warning("fetch failed for %s: status %s", url, result.status)
            continue

        text = extractor.html_to_text(result.body)
        matches = match_keywords(text, plan.keyword_lists)
        language = detect_language(text)
        admitted = url_admitted(url, plan.allowlist, plan.blocklist)
        keep = admitted and language == "en" and bool(matches)
        if keep:
            retained.append(
                PageRecord(
                    url=url,
                    platform_id=plan.platform.id,
                    hop=hop,
                    topics=frozenset(t for t, _ in matches),
                    matched_keywords=matches,
                    language=language,
                    fetched_at=result.fetched_at,
                    source="crawler",
                    html=result.body,
                )
            )
        # seeds anchor exploration even without a keyword match
        if (keep or is_seed) and hop < plan.max_hops:
            for link in extract_links(result.body, result.final_url):
                if url_admitted(link, plan.allowlist, plan.blocklist):
                    frontier.add(link, hop + 1)
    retained.sort(key=lambda r: (r.hop, r.url))
    return retained


def load_plan(path: Path, politeness: PolitenessPolicy | None = None) -> CrawlPlan:
    """Load one platform's crawl plan from a JSON config file."""
    doc = json.loads(Path(path).read_text("utf-8"))
    platform = Platform(
        id=doc["platform"],
        display_name=doc.get("display_name", doc["platform"]),
        tranco_rank=doc.get("tranco_rank"),
    )
    seeds = [
        Seed(url=s["url"], origin=s.get("topic", "canonical"))
        for s in doc["seeds"]
    ]
    return CrawlPlan(
        platform=platform,
        seeds=seeds,
        allowlist=doc["allow"],
        blocklist=doc.get("block", []),
        max_hops=doc.get("max_hops", 2),
        politeness=politeness or PolitenessPolicy(),
        backend=doc.get("backend", "direct_http"),
    )


def load_plans(config_dir: Path, politeness: PolitenessPolicy | None = None) -> list[CrawlPlan]:
    return [
        load_plan(p, politeness)
        for p in sorted(Path(config_dir).glob("*.json"))
    ]


def write_crawl_output(records: list[PageRecord], out_dir: Path) -> Path:
    """Write content-addressed HTML blobs plus an ndjson manifest; returns the
    manifest path."""
    out_dir = Path(out_dir)
    blob_dir = out_dir / "blobs"
    blob_dir.mkdir(parents=True, exist_ok=True)
    manifest = out_dir / "pages.ndjson"
    with manifest.open("a", encoding="utf-8") as fh:
        for record in records:
            digest = hashlib.sha256(record.html or b"").hexdigest()
            (blob_dir / f"{digest}.html").write_bytes(record.html or b"")
            stored = PageRecord(
                url=record.url,
                platform_id=record.platform_id,
                hop=record.hop,
                topics=record.topics,
                matched_keywords=record.matched_keywords,
                language=record.language,
                fetched_at=record.fetched_at,
                source=record.source,
                blob=digest,
            )
            fh.write(stored.manifest_line() + "\n")
    return manifest


def read_manifest(out_dir: Path) -> list[PageRecord]:
    manifest = Path(out_dir) / "pages.ndjson"
    records = []
    for line in manifest.read_text("utf-8").splitlines():
        if line.strip():
            records.append(PageRecord.from_manifest_dict(json.loads(line)))
    return records
