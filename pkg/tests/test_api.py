import json

import pytest
from fastapi.testclient import TestClient

from polimod.api import create_app
from polimod.extractor import Passage, emit_corpus_file
from polimod.model import Topic, canonical_codebook
from polimod.records import PageRecord

LEGAL = "POLICY JUSTIFICATION/Legal"
REDRESS = "REDRESS / APPEAL"


def make_corpus(root):
    page = PageRecord(
        url="https://example.com/rules", platform_id="example", hop=0,
        topics=frozenset({Topic.CopyrightInfringement}),
        matched_keywords=frozenset(), language="en",
        fetched_at="2026-01-01T00:00:00Z", source="crawler",
    )
    text = "A copyright notice lives right here in this sentence."
    passages = [Passage(page_ref=page.url, topic=Topic.CopyrightInfringement,
                        keywords=frozenset({"copyright"}), span=(0, 1),
                        text=text)]
    [path] = emit_corpus_file(page, passages, root)
    return str(path.relative_to(root)), text


@pytest.fixture
def client(tmp_path):
    corpus = tmp_path / "corpus"
    rel, text = make_corpus(corpus)
    app = create_app(tmp_path / "store.ndjson", corpus_root=corpus,
                     platforms_file="fixtures/platforms.json")
    with TestClient(app) as c:
        c.corpus_rel = rel
        c.passage_text = text
        yield c


def body(rel, **over):
    base = dict(
        platform_id="example",
        topic="CopyrightInfringement",
        passage_ref=[rel, 0],
        char_span=[0, 10],
        code=LEGAL,
        coder="alice",
    )
    base.update(over)
    return base


def test_codebook_endpoint(client):
    resp = client.get("/api/v1/codebook")
    assert resp.status_code == 200
    assert resp.json() == json.loads(canonical_codebook().to_json())


def test_platforms_endpoint(client):
    resp = client.get("/api/v1/platforms")
    assert resp.status_code == 200
    rows = resp.json()
    assert len(rows) == 43
    youtube = next(r for r in rows if r["id"] == "youtube")
    assert youtube["location_meta"]["has_tos"] is True


def test_passage_listing_and_detail(client):
    listing = client.get("/api/v1/passages").json()
    assert [p["page"] for p in listing["pages"]] == [client.corpus_rel]
    assert listing["pages"][0]["passage_count"] == 1
    assert client.get("/api/v1/passages",
                      params={"platform": "nope"}).json() == {"pages": []}
    detail = client.get("/api/v1/passages",
                        params={"page": client.corpus_rel}).json()
    assert detail["passages"][0]["text"] == client.passage_text
    missing = client.get("/api/v1/passages", params={"page": "no/such.txt"})
    assert missing.status_code == 404
    assert missing.json()["code"] == "UnknownPassage"


def test_segment_crud_and_review_flow(client):
    created = client.post("/api/v1/segments", json=body(client.corpus_rel))
    assert created.status_code == 201
    seg = created.json()
    assert seg["id"] and seg["version"] == 1

    patched = client.patch(f"/api/v1/segments/{seg['id']}",
                           json={"code": REDRESS, "version": 1})
    assert patched.status_code == 200
    assert patched.json()["code"] == REDRESS
    assert patched.json()["version"] == 2

    stale = client.patch(f"/api/v1/segments/{seg['id']}",
                         json={"code": LEGAL, "version": 1})
    assert stale.status_code == 409
    assert stale.json()["code"] == "VersionConflict"

    noversion = client.patch(f"/api/v1/segments/{seg['id']}",
                             json={"code": LEGAL})
    assert noversion.status_code == 409

    selfflag = client.post(f"/api/v1/segments/{seg['id']}/review",
                           json={"reviewer": "alice", "action": "flag"})
    assert selfflag.status_code == 422
    assert selfflag.json()["code"] == "SelfReview"

    flagged = client.post(f"/api/v1/segments/{seg['id']}/review",
                          json={"reviewer": "bob", "action": "flag"})
    assert flagged.status_code == 200
    assert flagged.json()["status"] == "flagged"

    bad = client.post(f"/api/v1/segments/{seg['id']}/review",
                      json={"reviewer": "bob", "action": "flag"})
    assert bad.status_code == 422
    assert bad.json()["code"] == "IllegalTransition"

    listed = client.get("/api/v1/segments",
                        params={"status": "flagged"}).json()
    assert [s["id"] for s in listed] == [seg["id"]]
    assert client.get("/api/v1/segments",
                      params={"coder": "nobody"}).json() == []


def test_validation_errors(client):
    rel = client.corpus_rel
    bad_code = client.post("/api/v1/segments",
                           json=body(rel, code="NOT A CODE"))
    assert bad_code.status_code == 422
    assert bad_code.json()["code"] == "InvalidCode"

    bad_span = client.post("/api/v1/segments",
                           json=body(rel, char_span=[0, 10_000]))
    assert bad_span.status_code == 422
    assert bad_span.json()["code"] == "SpanOutOfBounds"

    bad_ref = client.post("/api/v1/segments",
                          json=body(rel, passage_ref=["no/file.txt", 0]))
    assert bad_ref.status_code == 404
    assert bad_ref.json()["code"] == "UnknownPassage"

    missing = client.patch("/api/v1/segments/ghost",
                           json={"code": LEGAL, "version": 1})
    assert missing.status_code == 404
    assert missing.json()["code"] == "UnknownSegment"


def test_export_import_round_trip(client, tmp_path):
    client.post("/api/v1/segments", json=body(client.corpus_rel))
    client.post("/api/v1/segments",
                json=body(client.corpus_rel, coder="bob", code=REDRESS))
    exported = client.get("/api/v1/export.ndjson")
    assert exported.status_code == 200
    assert exported.headers["content-type"].startswith("application/x-ndjson")
    assert exported.text.endswith("\n")
    assert len(exported.text.strip().split("\n")) == 2

    other = create_app(tmp_path / "other.ndjson")
    with TestClient(other) as c2:
        imported = c2.post("/api/v1/import", content=exported.text)
        assert imported.status_code == 200
        assert imported.json() == {"imported": 2}
        assert c2.get("/api/v1/export.ndjson").text == exported.text

        bad = c2.post("/api/v1/import", content="{broken\n")
        assert bad.status_code == 422
        assert bad.json()["code"] == "SchemaViolation"


def test_empty_export_and_root_placeholder(client):
    assert client.get("/api/v1/export.ndjson").text == ""
    root = client.get("/")
    assert root.status_code == 200
    assert "no UI bundle" in root.text


def test_ui_bundle_is_served_when_present(tmp_path):
    ui = tmp_path / "dist"
    ui.mkdir()
    (ui / "index.html").write_text("<html><body>annotator</body></html>")
    app = create_app(tmp_path / "store.ndjson", ui_dir=ui)
    with TestClient(app) as c:
        assert "annotator" in c.get("/").text
        assert c.get("/api/v1/segments").json() == []
