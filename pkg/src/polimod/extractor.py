"""HTML-to-text conversion, sentence segmentation, and keyword-window passage
extraction, plus emission of the plain-text corpus files.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from html.parser import HTMLParser
from pathlib import Path
from urllib.parse import unquote

from .model import KeywordList, Topic
from .records import PageRecord

BLOCK_TAGS = {
    "address", "article", "aside", "blockquote", "br", "caption", "dd",
    "div", "dl", "dt", "fieldset", "figcaption", "figure", "footer", "form",
    "h1", "h2", "h3", "h4", "h5", "h6", "header", "hr", "li", "main", "nav",
    "ol", "p", "pre", "section", "table", "tbody", "td", "tfoot", "th",
    "thead", "title", "tr", "ul",
}
SKIP_TAGS = {"script", "style", "noscript", "template"}


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in SKIP_TAGS:
            self._skip_depth += 1
        elif tag in BLOCK_TAGS:
            self.parts.append("\n")

    def handle_endtag(self, tag):
        if tag in SKIP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
        elif tag in BLOCK_TAGS:
            self.parts.append("\n")

    def handle_startendtag(self, tag, attrs):
        if tag in BLOCK_TAGS:
            self.parts.append("\n")

    def handle_data(self, data):
        if not self._skip_depth:
            self.parts.append(data)


def html_to_text(html: bytes | str) -> str:
    """Visible text of an HTML document.

    Script/style/noscript/template contents are dropped, block-level elements
    become line breaks, inline whitespace collapses to single spaces, and
    entities are decoded.  The parser is error-tolerant; malformed markup
    degrades to its raw text rather than raising.
    """
    if isinstance(html, bytes):
        html = html.decode("utf-8", errors="replace")
    parser = _TextExtractor()
    parser.feed(html)
    parser.close()
    raw = "".join(parser.parts)
    lines = []
    for line in raw.split("\n"):
        collapsed = re.sub(r"[^\S\n]+", " ", line.replace("\xa0", " ")).strip()
        if collapsed:
            lines.append(collapsed)
    return "\n".join(lines)


@dataclass(frozen=True)
class SentenceDoc:
    """Sentences of one page plus their character offsets into the flat text."""

    page_ref: str
    sentences: tuple[str, ...]
    char_offsets: tuple[tuple[int, int], ...]


# Tokens before a period that do not end a sentence.
_ABBREVIATIONS = {
    "e.g", "i.e", "etc", "vs", "cf", "al", "inc", "ltd", "llc", "corp", "co",
    "dr", "mr", "mrs", "ms", "prof", "jr", "sr", "st", "no", "sec", "fig",
    "u.s", "u.s.c", "u.k", "e.u", "approx", "dept", "est",
}

_BOUNDARY_RE = re.compile(r"[.?!]+(\s+)")
_NEXT_OK_RE = re.compile(r"[A-Z\"'“‘(\d]")


def _is_abbreviation(text: str, punct_start: int) -> bool:
    m = re.search(r"[\w.]+$", text[:punct_start])
    if not m:
        return False
    token = m.group(0).rstrip(".").lower()
    if token in _ABBREVIATIONS:
        return True
    # single-letter initials such as "J." or the inner dots of "U.S."
    return len(token.rsplit(".", 1)[-1]) == 1


def segment_sentences(text: str, page_ref: str = "") -> SentenceDoc:
    """Rule-based sentence split.

    Splits after [.?!] runs followed by whitespace and an uppercase letter,
    quote, or digit, unless the preceding token is a known abbreviation or a
    single-letter initial.  Newlines always terminate a sentence.  Empty
    sentences are dropped; offsets index into ``text`` unchanged.
    """
    breaks = [0]
    for m in _BOUNDARY_RE.finditer(text):
        end = m.end()
        if end < len(text) and not _NEXT_OK_RE.match(text[end]):
            continue
        if _is_abbreviation(text, m.start()):
            continue
        breaks.append(end)
    # newline terminators
    for i, ch in enumerate(text):
        if ch == "\n":
            breaks.append(i + 1)
    breaks = sorted(set(breaks)) + [len(text)]

    sentences: list[str] = []
    offsets: list[tuple[int, int]] = []
    for a, b in zip(breaks, breaks[1:]):
        chunk = text[a:b]
        stripped = chunk.strip()
        if not stripped:
            continue
        start = a + (len(chunk) - len(chunk.lstrip()))
        end = start + len(stripped)
        sentences.append(stripped)
        offsets.append((start, end))
    return SentenceDoc(page_ref=page_ref, sentences=tuple(sentences),
                       char_offsets=tuple(offsets))


@dataclass(frozen=True)
class Passage:
    """A keyword-anchored sentence window, labeled by topic and stems."""

    page_ref: str
    topic: Topic
    keywords: frozenset[str]
    span: tuple[int, int]  # sentence index range [start, end)
    text: str


def extract_passages(
    doc: SentenceDoc,
    lists: list[KeywordList],
    window: int = 5,
    merge_adjacent: bool = False,
) -> list[Passage]:
    """Cut keyword-anchored windows of ``window`` sentences before and after
    each hit sentence, merging overlapping windows within a topic.

    Touching-but-disjoint windows merge only when ``merge_adjacent`` is set.
    Passages of different topics may overlap freely.
    """
    if window < 0:
        raise ValueError("window must be >= 0")
    n = len(doc.sentences)
    lowered = [s.lower() for s in doc.sentences]
    out: list[Passage] = []
    for kl in lists:
        hits: list[tuple[int, set[str]]] = []
        for i, s in enumerate(lowered):
            stems = {stem for stem in kl.stems if stem in s}
            if stems:
                hits.append((i, stems))
        merged: list[tuple[int, int, set[str]]] = []
        for i, stems in hits:
            lo, hi = max(0, i - window), min(n, i + window + 1)
            if merged and (
                lo < merged[-1][1] or (merge_adjacent and lo <= merged[-1][1])
            ):
                prev = merged[-1]
                merged[-1] = (prev[0], max(prev[1], hi), prev[2] | stems)
            else:
                merged.append((lo, hi, set(stems)))
        for lo, hi, stems in merged:
            out.append(
                Passage(
                    page_ref=doc.page_ref,
                    topic=kl.topic,
                    keywords=frozenset(stems),
                    span=(lo, hi),
                    text=" ".join(doc.sentences[lo:hi]),
                )
            )
    out.sort(key=lambda p: (p.topic.value, p.span))
    return out


def url_slug(url: str) -> str:
    """Filesystem-safe, collision-resistant name for a page URL."""
    decoded = unquote(url)
    decoded = re.sub(r"^https?://", "", decoded).lower()
    slug = re.sub(r"[^a-z0-9.-]", "_", decoded)[:180]
    digest = hashlib.sha1(url.encode("utf-8")).hexdigest()[:8]
    return f"{slug}_{digest}"


def render_corpus_file(page: PageRecord, topic: Topic,
                       passages: list[Passage]) -> str:
    lines = [
        f"URL: {page.url}",
        f"PLATFORM: {page.platform_id}",
        f"TOPIC: {topic.value}",
        f"FETCHED: {page.fetched_at}",
        "",
    ]
    for p in passages:
        stems = ",".join(sorted(p.keywords))
        lines.append(f"PASSAGE keywords={stems} span={p.span[0]}-{p.span[1]}")
        lines.append(p.text)
        lines.append("")
    # the trailing blank element yields the final LF
    return "\n".join(lines)


def emit_corpus_file(page: PageRecord, passages: list[Passage],
                     root: Path) -> list[Path]:
    """Write one UTF-8/LF corpus file per (page, topic) with passages for that
    topic; returns the paths written.  Topics without passages get no file."""
    root = Path(root)
    written: list[Path] = []
    by_topic: dict[Topic, list[Passage]] = {}
    for p in passages:
        if p.page_ref != page.url:
            raise ValueError("passage does not belong to page")
        by_topic.setdefault(p.topic, []).append(p)
    for topic in sorted(by_topic, key=lambda t: t.value):
        group = sorted(by_topic[topic], key=lambda p: p.span)
        path = root / page.platform_id / topic.dir_name / f"{url_slug(page.url)}.txt"
        path.parent.mkdir(parents=True, exist_ok=True)
        content = render_corpus_file(page, topic, group)
        path.write_bytes(content.encode("utf-8"))
        written.append(path)
    return written


@dataclass(frozen=True)
class CorpusPassage:
    """A passage as parsed back from a corpus file."""

    index: int
    keywords: tuple[str, ...]
    span: tuple[int, int]
    text: str


@dataclass(frozen=True)
class CorpusFile:
    url: str
    platform_id: str
    topic: Topic
    fetched_at: str
    passages: tuple[CorpusPassage, ...]


_PASSAGE_HEADER = re.compile(r"^PASSAGE keywords=(?P<kw>[^ ]*) span=(?P<a>\d+)-(?P<b>\d+)$")


def parse_corpus_file(path: Path) -> CorpusFile:
    """Parse a corpus file back into its header and passages."""
    lines = Path(path).read_text("utf-8").split("\n")
    header = {}
    for i in range(4):
        key, _, value = lines[i].partition(": ")
        header[key] = value
    passages: list[CorpusPassage] = []
    i = 5
    while i < len(lines):
        m = _PASSAGE_HEADER.match(lines[i])
        if not m:
            i += 1
            continue
        text_lines = []
        j = i + 1
        while j < len(lines) and lines[j] != "":
            text_lines.append(lines[j])
            j += 1
        passages.append(
            CorpusPassage(
                index=len(passages),
                keywords=tuple(m.group("kw").split(",")) if m.group("kw") else (),
                span=(int(m.group("a")), int(m.group("b"))),
                text="\n".join(text_lines),
            )
        )
        i = j + 1
    return CorpusFile(
        url=header["URL"],
        platform_id=header["PLATFORM"],
        topic=Topic.parse(header["TOPIC"]),
        fetched_at=header["FETCHED"],
        passages=tuple(passages),
    )
