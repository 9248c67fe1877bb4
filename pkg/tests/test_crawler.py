import json

import pytest

from polimod.crawler import (
    CrawlPlan,
    Frontier,
    Seed,
    crawl,
    extract_links,
    load_plan,
    load_plans,
    match_keywords,
    read_manifest,
    write_crawl_output,
)
from polimod.extractor import html_to_text
from polimod.fetch import (
    DirectHttpBackend,
    FetchResult,
    PolitenessPolicy,
    WebDriverBackend,
)
from polimod.language import detect_language
from polimod.model import KeywordList, Platform, Topic

FAST = PolitenessPolicy(per_host_min_interval=0.01, max_retries=0,
                        backoff_base=0.01, timeout=5)
COPYRIGHT = KeywordList(topic=Topic.CopyrightInfringement,
                        stems=("copyright",))
PLATFORM = Platform(id="example", display_name="Example", tranco_rank=1)

ENGLISH_FILLER = ("This page describes the rules that apply to all of the "
                  "content posted on our service.")
GERMAN_FILLER = ("Diese Seite beschreibt die Regeln, die für alle von den "
                 "Nutzern veröffentlichten Inhalte gelten und wie wir sie "
                 "durchsetzen.")


def page(*, links=(), keyword=False, filler=ENGLISH_FILLER):
    body = [f"<p>{filler}</p>"]
    if keyword:
        body.append("<p>Copyright complaints are handled here.</p>")
    body.extend(f'<a href="{href}">link</a>' for href in links)
    return f"<html><body>{''.join(body)}</body></html>"


class FakeFetcher:
    """In-memory fetcher over ``pages: url -> html``; records every call."""

    def __init__(self, pages):
        self.pages = pages
        self.calls = []

    def fetch(self, url):
        self.calls.append(url)
        html = self.pages.get(url)
        return FetchResult(
            final_url=url,
            status=200 if html is not None else 404,
            body=(html or "").encode(),
            fetched_at="2026-01-01T00:00:00Z",
            backend="direct_http",
        )


def oracle(pages, seeds, allow, block, max_hops, lists):
    """Independent level-by-level traversal computing (fetched, retained)."""

    def admitted(url):
        return (any(p == "*" or p in url for p in allow)
                and not any(p in url for p in block))

    def rules_hit(url):
        html = pages.get(url)
        if html is None:
            return False
        text = html_to_text(html)
        return (admitted(url) and detect_language(text) == "en"
                and bool(match_keywords(text, lists)))

    fetched, retained = [], set()
    level = list(dict.fromkeys(seeds))
    seen = set(level)
    for hop in range(max_hops + 1):
        next_level = []
        for url in level:
            fetched.append(url)
            if pages.get(url) is None:
                continue
            keep = rules_hit(url)
            if keep:
                retained.add(url)
            if keep or (hop == 0 and url in seeds):
                for link in extract_links(pages[url], url):
                    if admitted(link) and link not in seen:
                        seen.add(link)
                        next_level.append(link)
        level = next_level
    return fetched, retained


def run(pages, seeds, allow, block=(), max_hops=2):
    plan = CrawlPlan(
        platform=PLATFORM,
        seeds=[Seed(url=s) for s in seeds],
        allowlist=list(allow),
        blocklist=list(block),
        max_hops=max_hops,
        keyword_lists=[COPYRIGHT],
        politeness=FAST,
    )
    fetcher = FakeFetcher(pages)
    return crawl(plan, fetcher), fetcher


def test_diamond_graph_fetches_each_page_once():
    base = "https://example.com"
    pages = {
        f"{base}/index": page(links=["/a", "/b"], keyword=True),
        f"{base}/a": page(links=["/c"], keyword=True),
        f"{base}/b": page(links=["/c"], keyword=True),
        f"{base}/c": page(links=["/d"], keyword=True),
        f"{base}/d": page(keyword=True),
    }
    records, fetcher = run(pages, [f"{base}/index"], ["example.com"])
    assert len(fetcher.calls) == len(set(fetcher.calls))
    # /c reached at hop 2 is retained but not expanded; /d is never fetched
    assert f"{base}/d" not in fetcher.calls
    assert [r.url for r in records] == [
        f"{base}/index", f"{base}/a", f"{base}/b", f"{base}/c"]
    assert [r.hop for r in records] == [0, 1, 1, 2]


def test_blocked_language_and_keyword_gates():
    base = "https://example.com"
    pages = {
        f"{base}/seed": page(links=[
            "/allowed", "/blog/post", "/nokey", "/german"]),
        f"{base}/allowed": page(keyword=True),
        f"{base}/blog/post": page(keyword=True),
        f"{base}/nokey": page(links=["/nokey-child"]),
        f"{base}/nokey-child": page(keyword=True),
        f"{base}/german": page(keyword=True, filler=GERMAN_FILLER),
    }
    records, fetcher = run(
        pages, [f"{base}/seed"], ["example.com"], block=["/blog"])
    # blocked URLs are never fetched; unretained pages are not expanded
    assert f"{base}/blog/post" not in fetcher.calls
    assert f"{base}/nokey-child" not in fetcher.calls
    assert f"{base}/nokey" in fetcher.calls
    assert f"{base}/german" in fetcher.calls
    # the keywordless seed is expanded but not retained
    assert [r.url for r in records] == [f"{base}/allowed"]
    assert records[0].matched_keywords == frozenset(
        {(Topic.CopyrightInfringement, "copyright")})


def build_fixture_site(base):
    """About 20 pages mixing all the gate cases, for oracle comparison."""
    pages = {
        f"{base}/seed": page(
            links=["/hub", "/de", "/plain", "/blocked/x", "/dead"],
            keyword=True),
        f"{base}/hub": page(
            links=["/leaf1", "/leaf2", "/hub2", "/blocked/y"], keyword=True),
        f"{base}/hub2": page(links=["/deep"], keyword=True),
        f"{base}/leaf1": page(keyword=True),
        f"{base}/leaf2": page(),
        f"{base}/deep": page(keyword=True),
        f"{base}/de": page(keyword=True, filler=GERMAN_FILLER),
        f"{base}/plain": page(links=["/never"]),
        f"{base}/never": page(keyword=True),
        f"{base}/blocked/x": page(keyword=True),
        f"{base}/blocked/y": page(keyword=True),
    }
    for i in range(8):
        pages[f"{base}/hub/extra{i}"] = page(keyword=(i % 2 == 0))
    pages[f"{base}/hub"] = page(
        links=["/leaf1", "/leaf2", "/hub2", "/blocked/y"]
        + [f"/hub/extra{i}" for i in range(8)],
        keyword=True)
    return pages


def test_crawl_matches_brute_force_oracle():
    base = "https://example.com"
    pages = build_fixture_site(base)
    seeds = [f"{base}/seed"]
    allow, block = ["example.com"], ["/blocked"]
    records, fetcher = run(pages, seeds, allow, block=block)
    want_fetched, want_retained = oracle(
        pages, seeds, allow, block, 2, [COPYRIGHT])
    assert sorted(fetcher.calls) == sorted(want_fetched)
    assert len(fetcher.calls) == len(set(fetcher.calls))
    assert {r.url for r in records} == want_retained
    assert len(fetcher.calls) <= 40


def test_results_sorted_by_hop_then_url():
    base = "https://example.com"
    pages = build_fixture_site(base)
    records, _ = run(pages, [f"{base}/seed"], ["example.com"], ["/blocked"])
    assert [(r.hop, r.url) for r in records] == sorted(
        (r.hop, r.url) for r in records)


def test_max_hops_zero_fetches_only_seeds():
    base = "https://example.com"
    pages = {f"{base}/seed": page(links=["/a"], keyword=True),
             f"{base}/a": page(keyword=True)}
    records, fetcher = run(pages, [f"{base}/seed"], ["example.com"],
                           max_hops=0)
    assert fetcher.calls == [f"{base}/seed"]
    assert len(records) == 1


def test_fetch_errors_are_skipped():
    base = "https://example.com"
    pages = {f"{base}/seed": page(links=["/missing", "/ok"], keyword=True),
             f"{base}/ok": page(keyword=True)}
    records, fetcher = run(pages, [f"{base}/seed"], ["example.com"])
    assert f"{base}/missing" in fetcher.calls  # attempted, 404, skipped
    assert {r.url for r in records} == {f"{base}/seed", f"{base}/ok"}


def test_crawl_over_real_http_with_redirects(http_server):
    srv = http_server({})
    host = srv.base.split("//")[1]
    srv.routes.update({
        "/seed": (200, {}, page(links=["/moved", "/b"], keyword=True)
                  .encode()),
        "/moved": (302, {"Location": "/target"}, b""),
        "/target": (200, {}, page(keyword=True).encode()),
        "/b": (200, {}, page(keyword=True).encode()),
    })
    policy = PolitenessPolicy(per_host_min_interval=0.1, max_retries=0,
                              backoff_base=0.01, timeout=5)
    plan = CrawlPlan(
        platform=PLATFORM,
        seeds=[Seed(url=srv.url("/seed"))],
        allowlist=[host],
        keyword_lists=[COPYRIGHT],
        politeness=policy,
    )
    from conftest import RecordingSession

    session = RecordingSession()
    records = crawl(plan, DirectHttpBackend(policy, session=session))
    assert {r.url for r in records} == {
        srv.url("/seed"), srv.url("/moved"), srv.url("/b")}
    paths = [p for p, _ in srv.hits]
    assert len(paths) == len(set(paths))  # no duplicate fetches
    times = [t for _, t in session.sends]
    gaps = [b - a for a, b in zip(times, times[1:])]
    assert all(g >= 0.1 - 0.002 for g in gaps)


@pytest.mark.webdriver
def test_script_rendered_page_needs_browser_backend(mock_webdriver):
    base = "https://app.example"
    shell = ("<html><body><p>" + ENGLISH_FILLER + "</p>"
             "<script>inject()</script></body></html>")
    rendered = page(keyword=True)
    drv = mock_webdriver({f"{base}/policy": rendered})
    plan = CrawlPlan(
        platform=PLATFORM,
        seeds=[Seed(url=f"{base}/policy")],
        allowlist=["app.example"],
        keyword_lists=[COPYRIGHT],
        politeness=FAST,
        backend="browser_driver",
    )
    # the raw shell has no keyword, so a direct fetcher retains nothing
    direct = crawl(plan, FakeFetcher({f"{base}/policy": shell}))
    assert direct == []
    backend = WebDriverBackend(drv.endpoint, FAST, ready_poll_interval=0.01)
    records = crawl(plan, backend)
    backend.close()
    assert [r.url for r in records] == [f"{base}/policy"]
    assert records[0].matched_keywords


# ----------------------------------------------------------------- plumbing

def test_match_keywords_and_frontier():
    hits = match_keywords("Copyright and more COPYRIGHT text",
                          [COPYRIGHT])
    assert hits == frozenset({(Topic.CopyrightInfringement, "copyright")})
    frontier = Frontier()
    assert frontier.add("u", 0) is True
    assert frontier.add("u", 1) is False
    assert frontier.pop() == ("u", 0)
    assert not frontier


def test_extract_links_normalizes_and_dedupes():
    html = ('<a href="/a">1</a><a href="a">2</a>'
            '<a href="mailto:x@y.z">3</a><a href="/a#frag">4</a>')
    assert extract_links(html, "https://example.com/dir/") == [
        "https://example.com/a", "https://example.com/dir/a"]


def test_plan_validation():
    with pytest.raises(ValueError):
        CrawlPlan(platform=PLATFORM, seeds=[], allowlist=["x"])
    with pytest.raises(ValueError):
        CrawlPlan(platform=PLATFORM, seeds=[Seed(url="https://e.com")],
                  allowlist=[])
    with pytest.raises(ValueError):
        CrawlPlan(platform=PLATFORM, seeds=[Seed(url="https://e.com")],
                  allowlist=["x"], max_hops=-1)


def test_write_and_read_manifest_round_trip(tmp_path):
    base = "https://example.com"
    pages = {f"{base}/seed": page(keyword=True)}
    records, _ = run(pages, [f"{base}/seed"], ["example.com"])
    manifest = write_crawl_output(records, tmp_path)
    assert manifest == tmp_path / "pages.ndjson"
    loaded = read_manifest(tmp_path)
    assert len(loaded) == 1
    got = loaded[0]
    assert got.url == records[0].url
    assert got.topics == records[0].topics
    assert got.matched_keywords == records[0].matched_keywords
    blob = tmp_path / "blobs" / f"{got.blob}.html"
    assert blob.read_bytes() == records[0].html


def test_load_shipped_plans():
    plans = load_plans("fixtures/config")
    assert len(plans) == 43
    by_id = {p.platform.id: p for p in plans}
    assert by_id["youtube"].max_hops == 2
    assert all(p.seeds and p.allowlist for p in plans)
    single = load_plan("fixtures/config/youtube.json")
    assert single.platform.id == "youtube"
    assert single.backend in {"direct_http", "browser_driver"}
