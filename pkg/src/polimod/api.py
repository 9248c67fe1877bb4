"""HTTP/JSON API for the annotation workflow, served on 127.0.0.1.

All routes live under /api/v1.  Errors are rendered as {"code", "message"}
objects; stale-version writes return 409.  If a built UI bundle is present
it is served at the web root, but the API is fully usable without it.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from . import store as store_mod
from .analysis import load_platforms
from .extractor import parse_corpus_file
from .model import Topic, canonical_codebook
from .store import (
    AnnotationStore,
    IllegalTransition,
    InvalidCode,
    ReviewAction,
    SchemaViolation,
    Segment,
    SelfReview,
    SpanOutOfBounds,
    UnknownPassage,
    UnknownSegment,
    VersionConflict,
)

log = logging.getLogger(__name__)

_ERROR_STATUS = {
    InvalidCode: 422,
    SpanOutOfBounds: 422,
    IllegalTransition: 422,
    SelfReview: 422,
    SchemaViolation: 422,
    UnknownPassage: 404,
    UnknownSegment: 404,
    VersionConflict: 409,
}


def _error(exc: Exception) -> JSONResponse:
    status = _ERROR_STATUS.get(type(exc), 500)
    return JSONResponse(
        status_code=status,
        content={"code": type(exc).__name__, "message": str(exc)},
    )


def create_app(store_path: Path,
               corpus_root: Optional[Path] = None,
               platforms_file: Optional[Path] = None,
               ui_dir: Optional[Path] = None) -> FastAPI:
    codebook = canonical_codebook()
    store = AnnotationStore(Path(store_path), corpus_root=corpus_root,
                            codebook=codebook)
    app = FastAPI(title="polimod", docs_url=None, redoc_url=None)
    app.state.store = store

    @app.exception_handler(store_mod.StoreError)
    async def _store_error(request: Request, exc: store_mod.StoreError):
        return _error(exc)

    @app.get("/api/v1/codebook")
    def get_codebook():
        return Response(content=codebook.to_json(),
                        media_type="application/json")

    @app.get("/api/v1/platforms")
    def get_platforms():
        if platforms_file and Path(platforms_file).exists():
            return [
                {"id": p.id, "display_name": p.display_name,
                 "tranco_rank": p.tranco_rank, "location_meta": p.location_meta}
                for p in load_platforms(platforms_file)
            ]
        # fall back to the corpus directory layout
        if corpus_root and Path(corpus_root).is_dir():
            return [
                {"id": d.name, "display_name": d.name,
                 "tranco_rank": None, "location_meta": None}
                for d in sorted(Path(corpus_root).iterdir()) if d.is_dir()
            ]
        return []

    @app.get("/api/v1/passages")
    def get_passages(platform: Optional[str] = None,
                     topic: Optional[str] = None,
                     page: Optional[str] = None):
        if corpus_root is None or not Path(corpus_root).is_dir():
            return {"pages": []} if page is None else _error(
                UnknownPassage("no corpus configured"))
        root = Path(corpus_root)
        if page is not None:
            path = root / page
            if not path.is_file() or path.suffix != ".txt":
                return _error(UnknownPassage(page))
            doc = parse_corpus_file(path)
            return {
                "page": page,
                "url": doc.url,
                "platform": doc.platform_id,
                "topic": doc.topic.value,
                "fetched_at": doc.fetched_at,
                "passages": [
                    {"index": i, "keywords": sorted(p.keywords),
                     "span": list(p.span), "text": p.text}
                    for i, p in enumerate(doc.passages)
                ],
            }
        pages = []
        for path in sorted(root.rglob("*.txt")):
            doc = parse_corpus_file(path)
            if platform and doc.platform_id != platform:
                continue
            if topic and doc.topic != Topic.parse(topic):
                continue
            pages.append({
                "page": str(path.relative_to(root)),
                "url": doc.url,
                "platform": doc.platform_id,
                "topic": doc.topic.value,
                "passage_count": len(doc.passages),
            })
        return {"pages": pages}

    def _segment_from_body(body: dict, segment_id: str = "") -> Segment:
        return Segment(
            id=segment_id or body.get("id", ""),
            platform_id=body["platform_id"],
            topic=body["topic"],
            passage_ref=(body["passage_ref"][0], body["passage_ref"][1]),
            char_span=(body["char_span"][0], body["char_span"][1]),
            code=body["code"],
            coder=body["coder"],
            created_at=body.get("created_at", ""),
            status=body.get("status", "primary"),
            note=body.get("note"),
            version=body.get("version", 1),
        )

    @app.post("/api/v1/segments", status_code=201)
    def post_segment(body: dict):
        seg = store.upsert_segment(_segment_from_body(body))
        return seg.to_dict()

    @app.patch("/api/v1/segments/{segment_id}")
    def patch_segment(segment_id: str, body: dict):
        existing = store.get(segment_id)  # UnknownSegment before upsert
        merged = {**existing.to_dict(), **body}
        if "version" not in body:
            raise VersionConflict(f"{segment_id}: version required")
        seg = store.upsert_segment(_segment_from_body(merged, segment_id))
        return seg.to_dict()

    @app.post("/api/v1/segments/{segment_id}/review")
    def post_review(segment_id: str, body: dict):
        action = ReviewAction(
            segment_id=segment_id,
            reviewer=body["reviewer"],
            action=body["action"],
            note=body.get("note"),
        )
        return store.review(action).to_dict()

    @app.get("/api/v1/segments")
    def get_segments(status: Optional[str] = None,
                     coder: Optional[str] = None,
                     platform: Optional[str] = None,
                     topic: Optional[str] = None):
        segs = store.segments(status=status, coder=coder,
                              platform=platform, topic=topic)
        return [s.to_dict() for s in segs]

    @app.get("/api/v1/export.ndjson")
    def export_ndjson():
        lines = list(store.export_segments())
        body = "\n".join(lines) + ("\n" if lines else "")
        return Response(content=body, media_type="application/x-ndjson")

    @app.post("/api/v1/import")
    async def import_segments(request: Request):
        raw = await request.body()
        count = store.import_segments(raw.decode("utf-8"))
        return {"imported": count}

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True),
                  name="ui")
    else:
        @app.get("/", include_in_schema=False)
        def index():
            return PlainTextResponse(
                "polimod API is running; no UI bundle is built. "
                "See /api/v1/codebook.\n")

    return app


def default_ui_dir() -> Optional[Path]:
    """Locate a built frontend bundle next to the repository, if any."""
    here = Path(__file__).resolve()
    for parent in here.parents:
        candidate = parent / "frontend" / "dist"
        if candidate.is_dir():
            return candidate
    return None
