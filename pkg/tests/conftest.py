"""Shared fixtures: a threaded local HTTP server for fetch/crawl tests and a
minimal in-process WebDriver wire-protocol server."""
from __future__ import annotations

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest
import requests


class RecordingSession(requests.Session):
    """Session that logs (host, monotonic send time) for every request, so
    tests can check client-side politeness spacing without network jitter."""

    def __init__(self):
        super().__init__()
        self.sends: list[tuple[str, float]] = []

    def request(self, method, url, **kwargs):
        from urllib.parse import urlsplit

        self.sends.append((urlsplit(url).netloc, time.monotonic()))
        return super().request(method, url, **kwargs)


class FixtureServer:
    """Local HTTP server whose routes are a dict ``path -> response``.

    A response is either ``(status, headers, body)`` or a callable taking the
    number of prior hits to that path (for retry scenarios).  Every request is
    appended to ``hits`` as ``(path, monotonic_time)``.
    """

    def __init__(self, routes: dict):
        self.routes = routes
        self.hits: list[tuple[str, float]] = []
        self._lock = threading.Lock()

        server = self

        class Handler(BaseHTTPRequestHandler):
            def do_GET(self):
                with server._lock:
                    count = sum(1 for p, _ in server.hits if p == self.path)
                    server.hits.append((self.path, time.monotonic()))
                spec = server.routes.get(self.path)
                if spec is None:
                    status, headers, body = 404, {}, b"not found"
                else:
                    if callable(spec):
                        spec = spec(count)
                    status, headers, body = spec
                self.send_response(status)
                headers = dict(headers)
                headers.setdefault("Content-Type", "text/html; charset=utf-8")
                headers["Content-Length"] = str(len(body))
                for k, v in headers.items():
                    self.send_header(k, v)
                self.end_headers()
                self.wfile.write(body)

            def log_message(self, *args):
                pass

        self._httpd = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._httpd.serve_forever,
                                        daemon=True)
        self._thread.start()
        self.base = f"http://127.0.0.1:{self._httpd.server_address[1]}"

    def url(self, path: str) -> str:
        return self.base + path

    def close(self):
        self._httpd.shutdown()
        self._httpd.server_close()


@pytest.fixture
def http_server():
    servers = []

    def start(routes):
        srv = FixtureServer(routes)
        servers.append(srv)
        return srv

    yield start
    for srv in servers:
        srv.close()


class MockWebDriver:
    """W3C WebDriver wire-protocol stub serving pre-rendered page sources.

    ``pages`` maps URL -> rendered HTML (what a browser would see after
    scripts ran).  Tracks created and deleted sessions.
    """

    def __init__(self, pages: dict[str, str],
                 ready_after_polls: int = 0):
        self.pages = pages
        self.sessions: list[str] = []
        self.deleted: list[str] = []
        self.navigations: list[str] = []
        self._current: dict[str, str] = {}
        self._polls: dict[str, int] = {}
        self.ready_after_polls = ready_after_polls
        driver = self

        class Handler(BaseHTTPRequestHandler):
            def _json(self, status, value):
                body = json.dumps({"value": value}).encode()
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def _read(self):
                length = int(self.headers.get("Content-Length") or 0)
                raw = self.rfile.read(length) if length else b"{}"
                return json.loads(raw or b"{}")

            def do_POST(self):
                parts = self.path.strip("/").split("/")
                if self.path == "/session":
                    sid = f"sess-{len(driver.sessions)}"
                    driver.sessions.append(sid)
                    self._json(200, {"sessionId": sid, "capabilities": {}})
                elif len(parts) == 3 and parts[2] == "url":
                    payload = self._read()
                    sid = parts[1]
                    driver.navigations.append(payload["url"])
                    driver._current[sid] = payload["url"]
                    driver._polls[sid] = 0
                    self._json(200, None)
                elif len(parts) == 4 and parts[2:] == ["execute", "sync"]:
                    sid = parts[1]
                    driver._polls[sid] = driver._polls.get(sid, 0) + 1
                    ready = driver._polls[sid] > driver.ready_after_polls
                    self._json(200, "complete" if ready else "loading")
                else:
                    self._json(404, {"error": "unknown command"})

            def do_GET(self):
                parts = self.path.strip("/").split("/")
                sid = parts[1] if len(parts) > 1 else ""
                current = driver._current.get(sid, "about:blank")
                if len(parts) == 3 and parts[2] == "url":
                    self._json(200, current)
                elif len(parts) == 3 and parts[2] == "source":
                    self._json(200, driver.pages.get(current, "<html></html>"))
                else:
                    self._json(404, {"error": "unknown command"})

            def do_DELETE(self):
                parts = self.path.strip("/").split("/")
                if len(parts) == 2:
                    driver.deleted.append(parts[1])
                    self._json(200, None)
                else:
                    self._json(404, {"error": "unknown command"})

            def log_message(self, *args):
                pass

        self._httpd = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._httpd.serve_forever,
                                        daemon=True)
        self._thread.start()
        self.endpoint = f"http://127.0.0.1:{self._httpd.server_address[1]}"

    def close(self):
        self._httpd.shutdown()
        self._httpd.server_close()


@pytest.fixture
def mock_webdriver():
    drivers = []

    def start(pages, **kwargs):
        drv = MockWebDriver(pages, **kwargs)
        drivers.append(drv)
        return drv

    yield start
    for drv in drivers:
        drv.close()
