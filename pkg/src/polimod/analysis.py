"""Tabulation of coded segments and every quantitative result: the six
finding percentage sets (dataset-wide and platform-averaged), redress share,
policy completeness, descriptive metrics, and location observations.

All fractions are exact rationals; rounding happens only at render time,
half-up at one decimal place.
"""
from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

from .model import COMPLETENESS_LEAVES, Platform, Topic

log = logging.getLogger(__name__)

LEGAL = "POLICY JUSTIFICATION/Legal"
CTS = "POLICY JUSTIFICATION/Community, Trust, & Safety"
DEFINITION = "MODERATION CRITERIA/Definition"
EXAMPLE = "MODERATION CRITERIA/Example"
EXCEPTION = "MODERATION CRITERIA/Exception"
ACTIVE_USER = "SAFEGUARDS/Active User Role"
PLATFORM_DETECTION = "SAFEGUARDS/Platform Detection Methods / Prevention Initiatives"
USER_TARGETED = "PLATFORM RESPONSE/User-Targeted Enforcement"
CONTENT_TARGETED = "PLATFORM RESPONSE/Content-Targeted Enforcement"
INVESTIGATION = "PLATFORM RESPONSE/Investigation / Review"
REDRESS = "REDRESS / APPEAL"
LIABILITY = "BINDING LEGALESE/Liability"
USER_RIGHTS = "BINDING LEGALESE/User Rights Altered"
SIGNPOST = "SIGNPOST"

TOPICS = tuple(Topic)


class AnalysisError(Exception):
    pass


class ZeroDenominator(AnalysisError):
    pass


class AllDenominatorsZero(AnalysisError):
    pass


class MissingMetadata(AnalysisError):
    pass


@dataclass
class CountsTable:
    """(platform, topic, code-leaf) -> non-negative segment count."""

    cells: dict[tuple[str, Topic, str], int] = field(default_factory=dict)
    provenance: str = "tabulated"  # "tabulated" | "fixture"

    def add(self, platform: str, topic: Topic, code: str, n: int = 1) -> None:
        if n < 0:
            raise ValueError("counts must be non-negative")
        key = (platform, topic, code)
        self.cells[key] = self.cells.get(key, 0) + n

    def count(self, codes: Optional[Iterable[str]] = None,
              topic: Optional[Topic] = None,
              platform: Optional[str] = None) -> int:
        codeset = set(codes) if codes is not None else None
        total = 0
        for (p, t, c), n in self.cells.items():
            if codeset is not None and c not in codeset:
                continue
            if topic is not None and t != topic:
                continue
            if platform is not None and p != platform:
                continue
            total += n
        return total

    def platforms(self) -> list[str]:
        return sorted({p for (p, _, _) in self.cells})

    @classmethod
    def from_csv(cls, path: Path) -> "CountsTable":
        table = cls(provenance="fixture")
        with Path(path).open(newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                table.add(
                    row["platform"], Topic.parse(row["topic"]), row["code"],
                    int(row["count"]),
                )
        return table


def tabulate(segments) -> CountsTable:
    """Count each non-excluded segment once under (platform, topic, code)."""
    table = CountsTable(provenance="tabulated")
    for seg in segments:
        if seg.status == "excluded_duplicate":
            continue
        table.add(seg.platform_id, Topic.parse(seg.topic), seg.code)
    return table


@dataclass(frozen=True)
class FindingReport:
    finding: str
    aggregation: str  # "dataset_wide" | "platform_averaged"
    fractions: dict[Topic, Fraction]
    excluded_platforms: dict[Topic, tuple[str, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class _ShareOfCode:
    """fraction(topic) = count(code in topic) / count(code across topics)."""
    code: str

    def fraction(self, t: CountsTable, topic: Topic,
                 platform: Optional[str] = None) -> Optional[Fraction]:
        denom = t.count([self.code], platform=platform)
        if denom == 0:
            return None
        return Fraction(t.count([self.code], topic=topic, platform=platform), denom)


@dataclass(frozen=True)
class _WithinTopicShare:
    """fraction(topic) = count(numerator in topic) / count(denominator in topic)."""
    numerator: str
    denominator: tuple[str, ...]

    def fraction(self, t: CountsTable, topic: Topic,
                 platform: Optional[str] = None) -> Optional[Fraction]:
        denom = t.count(self.denominator, topic=topic, platform=platform)
        if denom == 0:
            return None
        return Fraction(
            t.count([self.numerator], topic=topic, platform=platform), denom)


@dataclass(frozen=True)
class _ShareOfTopic:
    """fraction(topic) = count(code in topic) / count(all segments in topic)."""
    code: str

    def fraction(self, t: CountsTable, topic: Topic,
                 platform: Optional[str] = None) -> Optional[Fraction]:
        denom = t.count(topic=topic, platform=platform)
        if denom == 0:
            return None
        return Fraction(t.count([self.code], topic=topic, platform=platform), denom)


def topic_share_of_code(t: CountsTable, code: str) -> dict[Topic, Fraction]:
    """fraction(topic) = count(code in topic) / count(code), pooled over platforms."""
    op = _ShareOfCode(code)
    out = {}
    for topic in TOPICS:
        frac = op.fraction(t, topic)
        if frac is None:
            raise ZeroDenominator(code)
        out[topic] = frac
    return out


def within_topic_share(t: CountsTable, numerator: str,
                       denominator: Iterable[str]) -> dict[Topic, Fraction]:
    """fraction(topic) = count(numerator in topic) / count(denominator in topic)."""
    op = _WithinTopicShare(numerator, tuple(denominator))
    out = {}
    for topic in TOPICS:
        frac = op.fraction(t, topic)
        if frac is None:
            raise ZeroDenominator(topic.value)
        out[topic] = frac
    return out


def redress_within_topic(t: CountsTable) -> dict[Topic, Fraction]:
    """Redress segments as a share of all coded segments within each topic."""
    op = _ShareOfTopic(REDRESS)
    out = {}
    for topic in TOPICS:
        frac = op.fraction(t, topic)
        if frac is None:
            raise ZeroDenominator(topic.value)
        out[topic] = frac
    return out


_FINDING_OPS = {
    "F1": _ShareOfCode(LEGAL),
    "F2": _WithinTopicShare(CTS, (CTS, LEGAL)),
    "F3": _WithinTopicShare(DEFINITION, (DEFINITION, EXAMPLE)),
    "F4": _WithinTopicShare(PLATFORM_DETECTION, (PLATFORM_DETECTION, ACTIVE_USER)),
    "F5": _ShareOfCode(INVESTIGATION),
    "F6": _ShareOfCode(REDRESS),
    "F6b": _ShareOfTopic(REDRESS),
}

FINDING_IDS = tuple(_FINDING_OPS) + ("F7",)


def compute_finding(t: CountsTable, finding: str) -> FindingReport:
    if finding not in _FINDING_OPS:
        raise AnalysisError(f"unknown finding: {finding}")
    op = _FINDING_OPS[finding]
    fractions = {}
    for topic in TOPICS:
        frac = op.fraction(t, topic)
        if frac is None:
            raise ZeroDenominator(f"{finding}/{topic.value}")
        fractions[topic] = frac
    return FindingReport(finding=finding, aggregation="dataset_wide",
                         fractions=fractions)


def platform_averaged(t: CountsTable, finding: str) -> FindingReport:
    """Unweighted mean of the per-platform fractions, per topic; platforms
    whose denominator is zero for a topic are excluded from that mean."""
    if finding not in _FINDING_OPS:
        raise AnalysisError(f"unknown finding: {finding}")
    op = _FINDING_OPS[finding]
    result: dict[Topic, Fraction] = {}
    excluded: dict[Topic, tuple[str, ...]] = {}
    for topic in TOPICS:
        values = []
        skipped = []
        for platform in t.platforms():
            frac = op.fraction(t, topic, platform=platform)
            if frac is None:
                skipped.append(platform)
            else:
                values.append(frac)
        if not values:
            raise AllDenominatorsZero(f"{finding}/{topic.value}")
        result[topic] = sum(values, Fraction(0)) / len(values)
        excluded[topic] = tuple(skipped)
    return FindingReport(
        finding=finding,
        aggregation="platform_averaged",
        fractions=result,
        excluded_platforms=excluded,
    )


@dataclass(frozen=True)
class CompletenessReport:
    per_platform: dict[str, bool]
    fraction: Fraction
    missing: dict[str, tuple[str, ...]]  # incomplete platform -> absent leaves


def completeness(t: CountsTable) -> CompletenessReport:
    """A platform is complete iff it has at least one segment (any topic) for
    each required leaf; BINDING LEGALESE and SIGNPOST are not required."""
    per_platform: dict[str, bool] = {}
    missing: dict[str, tuple[str, ...]] = {}
    for platform in t.platforms():
        absent = tuple(
            leaf for leaf in COMPLETENESS_LEAVES
            if t.count([leaf], platform=platform) == 0
        )
        per_platform[platform] = not absent
        if absent:
            missing[platform] = absent
    n = len(per_platform)
    frac = Fraction(sum(per_platform.values()), n) if n else Fraction(0)
    return CompletenessReport(per_platform=per_platform, fraction=frac,
                              missing=missing)


# -- descriptive metrics -----------------------------------------------------


@dataclass(frozen=True)
class TopicMetrics:
    segments: int
    coded_pages: int
    total_pages: int
    coded_chars: int
    total_chars: int


@dataclass(frozen=True)
class DescriptiveReport:
    per_topic: dict[Topic, TopicMetrics]

    @property
    def total(self) -> TopicMetrics:
        vals = list(self.per_topic.values())
        return TopicMetrics(
            segments=sum(v.segments for v in vals),
            coded_pages=sum(v.coded_pages for v in vals),
            total_pages=sum(v.total_pages for v in vals),
            coded_chars=sum(v.coded_chars for v in vals),
            total_chars=sum(v.total_chars for v in vals),
        )


def _span_union_length(spans: list[tuple[int, int]]) -> int:
    total = 0
    end = -1
    for a, b in sorted(spans):
        if b <= end:
            continue
        total += b - max(a, end)
        end = b
    return total


def descriptive_metrics(corpus_root: Path, segments) -> DescriptiveReport:
    """Per-topic segment counts, coded/total corpus files, and coded/total
    characters.  A file is coded iff at least one non-excluded segment
    references it; coded characters are the union of annotated spans."""
    from .extractor import parse_corpus_file

    corpus_root = Path(corpus_root)
    live = [s for s in segments if s.status != "excluded_duplicate"]
    seg_count: dict[Topic, int] = {t: 0 for t in TOPICS}
    coded_files: dict[Topic, set[str]] = {t: set() for t in TOPICS}
    spans: dict[tuple[str, int], list[tuple[int, int]]] = {}
    file_topic: dict[str, Topic] = {}
    total_files: dict[Topic, int] = {t: 0 for t in TOPICS}
    total_chars: dict[Topic, int] = {t: 0 for t in TOPICS}

    for path in sorted(corpus_root.rglob("*.txt")):
        doc = parse_corpus_file(path)
        rel = str(path.relative_to(corpus_root))
        file_topic[rel] = doc.topic
        total_files[doc.topic] += 1
        total_chars[doc.topic] += sum(len(p.text) for p in doc.passages)

    for seg in live:
        topic = Topic.parse(seg.topic)
        seg_count[topic] += 1
        rel = seg.passage_ref[0]
        if rel in file_topic:
            coded_files[topic].add(rel)
        spans.setdefault((rel, seg.passage_ref[1]), []).append(seg.char_span)

    coded_chars: dict[Topic, int] = {t: 0 for t in TOPICS}
    for (rel, _idx), span_list in spans.items():
        topic = file_topic.get(rel)
        if topic is not None:
            coded_chars[topic] += _span_union_length(span_list)

    return DescriptiveReport(per_topic={
        t: TopicMetrics(
            segments=seg_count[t],
            coded_pages=len(coded_files[t]),
            total_pages=total_files[t],
            coded_chars=coded_chars[t],
            total_chars=total_chars[t],
        )
        for t in TOPICS
    })


def load_descriptive_fixture(path: Path) -> DescriptiveReport:
    """Load a transcribed descriptive-metrics table (per-topic rows)."""
    per_topic = {}
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            per_topic[Topic.parse(row["topic"])] = TopicMetrics(
                segments=int(row["segments"]),
                coded_pages=int(row["coded_pages"]),
                total_pages=int(row["total_pages"]),
                coded_chars=int(row["coded_chars"]),
                total_chars=int(row["total_chars"]),
            )
    return DescriptiveReport(per_topic=per_topic)


# -- location observations ----------------------------------------------------


@dataclass(frozen=True)
class LocationReport:
    tos_presence: Fraction
    cg_presence: Fraction
    cg_on_landing: Fraction  # among platforms that have community guidelines
    hc_presence: Fraction
    hc_on_landing: Fraction  # among platforms that have a help center


def location_report(platforms: list[Platform]) -> LocationReport:
    metas = []
    for p in platforms:
        if p.location_meta is None:
            raise MissingMetadata(p.id)
        metas.append(p.location_meta)
    n = len(metas)
    if n == 0:
        raise MissingMetadata("no platforms")
    has_cg = sum(1 for m in metas if m["has_community_guidelines"])
    has_hc = sum(1 for m in metas if m["has_help_center"])
    return LocationReport(
        tos_presence=Fraction(sum(1 for m in metas if m["has_tos"]), n),
        cg_presence=Fraction(has_cg, n),
        cg_on_landing=Fraction(
            sum(1 for m in metas if m["cg_on_landing"]), has_cg
        ) if has_cg else Fraction(0),
        hc_presence=Fraction(has_hc, n),
        hc_on_landing=Fraction(
            sum(1 for m in metas if m["hc_on_landing"]), has_hc
        ) if has_hc else Fraction(0),
    )


def load_platforms(path: Path) -> list[Platform]:
    doc = json.loads(Path(path).read_text("utf-8"))
    return [
        Platform(
            id=p["id"],
            display_name=p.get("display_name", p["id"]),
            tranco_rank=p.get("tranco_rank"),
            location_meta=p.get("location_meta"),
        )
        for p in doc["platforms"]
    ]


# -- rendering ---------------------------------------------------------------


def format_percent(value: Fraction, decimals: int = 1) -> str:
    """Round-half-up percentage, e.g. Fraction(422, 574) -> "73.5%"."""
    with localcontext() as ctx:
        ctx.prec = 50
        scaled = Decimal(value.numerator * 100) / Decimal(value.denominator)
        quantum = Decimal(1).scaleb(-decimals) if decimals else Decimal(1)
        return f"{scaled.quantize(quantum, rounding=ROUND_HALF_UP)}%"


def _report_rows(reports: list[FindingReport]) -> list[dict]:
    rows = []
    for r in reports:
        for topic in TOPICS:
            frac = r.fractions[topic]
            rows.append({
                "finding": r.finding,
                "aggregation": r.aggregation,
                "topic": topic.value,
                "numerator": frac.numerator,
                "denominator": frac.denominator,
                "value": float(frac),
                "percent": format_percent(frac),
                "excluded_platforms": list(r.excluded_platforms.get(topic, ())),
            })
    return rows


def render_report(reports: list[FindingReport], fmt: str = "json") -> bytes:
    """Render finding reports; raw rationals are preserved in JSON output."""
    rows = _report_rows(reports)
    if fmt == "json":
        return (json.dumps(rows, indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf,
            fieldnames=["finding", "aggregation", "topic", "numerator",
                        "denominator", "value", "percent", "excluded_platforms"],
        )
        writer.writeheader()
        for row in rows:
            row = dict(row)
            row["excluded_platforms"] = ";".join(row["excluded_platforms"])
            writer.writerow(row)
        return buf.getvalue().encode("utf-8")
    if fmt == "markdown":
        lines = ["| finding | aggregation | topic | percent |",
                 "| --- | --- | --- | --- |"]
        for row in rows:
            lines.append(
                f"| {row['finding']} | {row['aggregation']} | {row['topic']} "
                f"| {row['percent']} |"
            )
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise AnalysisError(f"unknown format: {fmt}")
