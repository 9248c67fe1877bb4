"""Command-line entry point: crawl -> extract -> serve -> analyze.

Exit codes: 0 success (including partial crawl failures, which are logged as
warnings), 1 usage error, 2 runtime failure.
"""
from __future__ import annotations

import hashlib
import json
import logging
import sys
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import click

from . import __version__
from .analysis import (
    FINDING_IDS,
    AnalysisError,
    CountsTable,
    completeness,
    compute_finding,
    format_percent,
    load_platforms,
    location_report,
    platform_averaged,
    render_report,
    tabulate,
)
from .crawler import crawl as run_crawl
from .crawler import load_plans, read_manifest, write_crawl_output
from .extractor import emit_corpus_file, extract_passages, html_to_text, segment_sentences
from .fetch import FetchError, PolitenessPolicy, ingest_manual, make_backend
from .model import Topic, canonical_keywords
from .records import PageRecord
from .store import AnnotationStore

log = logging.getLogger("polimod")

_BACKENDS = {"direct": "direct_http", "webdriver": "browser_driver"}


def config_hash(doc) -> str:
    """Stable hash of a JSON-compatible config; key order never matters."""
    return hashlib.sha256(
        json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
    ).hexdigest()


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class RunManifest:
    run_id: str
    config_hash: str
    tool_version: str
    started_at: str
    finished_at: str = ""
    platforms: dict = field(default_factory=dict)  # id -> {pages, errors}
    errors: list = field(default_factory=list)

    def write(self, path: Path) -> None:
        path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")


@click.group()
@click.version_option(version=__version__, prog_name="polimod")
def cli():
    """Collect, extract, annotate, and analyze platform moderation policies."""
    logging.basicConfig(level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")


@cli.command("crawl")
@click.option("--config", "config_dir", required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path),
              help="Directory of per-platform JSON crawl configs.")
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False, path_type=Path))
@click.option("--platform", "only_platform", default=None,
              help="Crawl a single platform id from the config directory.")
@click.option("--backend", type=click.Choice(sorted(_BACKENDS)), default="direct")
@click.option("--jobs", type=int, default=None,
              help="Parallel platform crawls (default: one per platform).")
def crawl_cmd(config_dir: Path, out_dir: Path, only_platform, backend, jobs):
    """Breadth-first collection of policy pages from configured seed links."""
    plans = load_plans(config_dir)
    if only_platform is not None:
        plans = [p for p in plans if p.platform.id == only_platform]
        if not plans:
            raise click.UsageError(f"no config for platform {only_platform!r}")
    configs = [json.loads(p.read_text("utf-8"))
               for p in sorted(Path(config_dir).glob("*.json"))]
    manifest = RunManifest(
        run_id=uuid.uuid4().hex,
        config_hash=config_hash(configs),
        tool_version=__version__,
        started_at=_now(),
    )

    def one(plan):
        fetcher = make_backend(_BACKENDS[backend], plan.politeness)
        try:
            records = run_crawl(plan, fetcher)
            write_crawl_output(records, out_dir / plan.platform.id)
            return plan.platform.id, len(records), None
        except FetchError as exc:
            return plan.platform.id, 0, str(exc)
        finally:
            close = getattr(fetcher, "close", None)
            if close:
                close()

    out_dir.mkdir(parents=True, exist_ok=True)
    workers = jobs or max(1, len(plans))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for platform_id, pages, error in pool.map(one, plans):
            manifest.platforms[platform_id] = {"pages": pages}
            if error:
                manifest.errors.append({"platform": platform_id, "error": error})
                log.warning("crawl failed for %s: %s", platform_id, error)
    manifest.finished_at = _now()
    manifest.write(out_dir / "run_manifest.json")
    click.echo(f"crawled {sum(p['pages'] for p in manifest.platforms.values())} "
               f"pages across {len(manifest.platforms)} platforms")


@cli.command("extract")
@click.option("--pages", "pages_dir", required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path),
              help="Crawl output directory (per-platform manifests + blobs).")
@click.option("--out", "corpus_dir", required=True,
              type=click.Path(file_okay=False, path_type=Path))
@click.option("--merge-adjacent", is_flag=True, default=False,
              help="Also merge passages whose windows touch without overlapping.")
def extract_cmd(pages_dir: Path, corpus_dir: Path, merge_adjacent: bool):
    """Cut keyword-anchored passages out of crawled pages into a text corpus."""
    lists = canonical_keywords()
    manifests = sorted(pages_dir.glob("*/pages.ndjson"))
    if not manifests:
        log.warning("no page manifests under %s; nothing to extract", pages_dir)
        click.echo("0 corpus files written")
        return
    corpus_dir.mkdir(parents=True, exist_ok=True)
    written = 0
    for manifest in manifests:
        platform_dir = manifest.parent
        for record in read_manifest(platform_dir):
            blob = platform_dir / "blobs" / f"{record.blob}.html"
            text = html_to_text(blob.read_bytes())
            doc = segment_sentences(text, page_ref=record.url)
            passages = extract_passages(doc, lists, window=5,
                                        merge_adjacent=merge_adjacent)
            written += len(emit_corpus_file(record, passages, corpus_dir))
    click.echo(f"{written} corpus files written")


@cli.command("ingest-manual")
@click.option("--file", "html_file", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--url", required=True)
@click.option("--platform", "platform_id", required=True)
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False, path_type=Path),
              help="Crawl output directory to add the page to.")
def ingest_manual_cmd(html_file: Path, url: str, platform_id: str, out_dir: Path):
    """Add a hand-saved HTML page (e.g. from a login-gated site) to the pages."""
    result = ingest_manual(html_file, url)
    text = html_to_text(result.body)
    from .crawler import match_keywords
    from .language import detect_language

    matches = match_keywords(text, canonical_keywords())
    record = PageRecord(
        url=result.final_url,
        platform_id=platform_id,
        hop=0,
        topics=frozenset(t for t, _ in matches),
        matched_keywords=matches,
        language=detect_language(text),
        fetched_at=result.fetched_at,
        source="manual",
        html=result.body,
    )
    write_crawl_output([record], out_dir / platform_id)
    click.echo(f"ingested {result.final_url} "
               f"({len(record.topics)} matching topics)")


@cli.command("serve")
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--store", "store_file", required=True,
              type=click.Path(dir_okay=False, path_type=Path))
@click.option("--port", type=int, default=8750, show_default=True)
@click.option("--platforms", "platforms_file", default=None,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
def serve_cmd(corpus_dir: Path, store_file: Path, port: int, platforms_file):
    """Serve the annotation API (and the coder UI, if built) on 127.0.0.1."""
    import uvicorn

    from .api import create_app, default_ui_dir

    app = create_app(store_file, corpus_root=corpus_dir,
                     platforms_file=platforms_file, ui_dir=default_ui_dir())
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="info")


def _completeness_payload(table: CountsTable) -> dict:
    report = completeness(table)
    return {
        "finding": "F7",
        "aggregation": "dataset_wide",
        "complete_platforms": sorted(
            p for p, ok in report.per_platform.items() if ok),
        "platform_count": len(report.per_platform),
        "numerator": report.fraction.numerator,
        "denominator": report.fraction.denominator,
        "value": float(report.fraction),
        "percent": format_percent(report.fraction),
        "missing": {p: list(ls) for p, ls in sorted(report.missing.items())},
    }


@cli.command("analyze")
@click.option("--store", "store_file", default=None,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--counts", "counts_file", default=None,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Counts fixture CSV (platform,topic,code,count).")
@click.option("--finding", "finding", default="all",
              type=click.Choice(list(FINDING_IDS) + ["all"]))
@click.option("--aggregation", default="dataset",
              type=click.Choice(["dataset", "platform"]))
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "csv", "markdown"]))
@click.option("--out", "out_file", default=None,
              type=click.Path(dir_okay=False, path_type=Path))
def analyze_cmd(store_file, counts_file, finding, aggregation, fmt, out_file):
    """Compute finding percentages from a store snapshot or a counts fixture."""
    if (store_file is None) == (counts_file is None):
        raise click.UsageError("exactly one of --store / --counts is required")
    if counts_file is not None:
        table = CountsTable.from_csv(counts_file)
    else:
        store = AnnotationStore(store_file)
        table = tabulate(store.segments())

    wanted = [f for f in FINDING_IDS if finding in ("all", f)]
    reports = []
    extra = None
    for fid in wanted:
        if fid == "F7":
            extra = _completeness_payload(table)
            continue
        if aggregation == "platform":
            reports.append(platform_averaged(table, fid))
        else:
            reports.append(compute_finding(table, fid))

    payload = render_report(reports, fmt) if reports else b""
    if extra is not None:
        if fmt == "json":
            rows = json.loads(payload) if payload else []
            rows.append(extra)
            payload = (json.dumps(rows, indent=2) + "\n").encode("utf-8")
        elif fmt == "csv":
            line = (f'F7,{extra["aggregation"]},,{extra["numerator"]},'
                    f'{extra["denominator"]},{extra["value"]},'
                    f'{extra["percent"]},\r\n')
            if not payload:
                payload = render_report([], fmt)
            payload += line.encode("utf-8")
        else:
            payload += (f'| F7 | {extra["aggregation"]} | (all) '
                        f'| {extra["percent"]} |\n').encode("utf-8")

    if out_file:
        Path(out_file).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)


@cli.command("report-locations")
@click.option("--platforms", "platforms_file", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
def report_locations_cmd(platforms_file: Path):
    """Where platforms keep their policies: presence and landing-page links."""
    report = location_report(load_platforms(platforms_file))
    rows = [
        ("terms-of-service pages", report.tos_presence),
        ("community guidelines", report.cg_presence),
        ("guidelines linked from landing page", report.cg_on_landing),
        ("help center", report.hc_presence),
        ("help center linked from guidelines", report.hc_on_landing),
    ]
    for label, frac in rows:
        click.echo(f"{format_percent(frac, decimals=0)} "
                   f"({frac.numerator}/{frac.denominator}) {label}")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except (AnalysisError, FetchError, OSError, KeyError, ValueError) as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return 2
    except Exception as exc:  # anything else is still a runtime failure
        log.error("unexpected failure: %s", exc)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
