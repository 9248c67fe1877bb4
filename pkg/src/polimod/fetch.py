"""Page retrieval: direct HTTP and WebDriver backends with per-host politeness,
retries with exponential backoff, and a manual-capture ingestion path.
"""
from __future__ import annotations

import logging
import os
import threading
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from urllib.parse import urljoin, urlsplit

import requests

from .urls import strip_fragment

log = logging.getLogger(__name__)

WEBDRIVER_URL_ENV = "POLIMOD_WEBDRIVER_URL"
MAX_REDIRECTS = 10
RETRYABLE_STATUSES = {429, 500, 502, 503, 504}


class FetchError(Exception):
    pass


class TimeoutExceeded(FetchError):
    pass


class RetriesExhausted(FetchError):
    pass


class NonHtmlContent(FetchError):
    pass


class RedirectLoop(FetchError):
    pass


class DriverUnreachable(FetchError):
    pass


class SessionCreationFailed(FetchError):
    pass


class EmptyFile(FetchError):
    pass


class UnreadableFile(FetchError):
    pass


@dataclass(frozen=True)
class PolitenessPolicy:
    per_host_min_interval: float = 2.0
    max_retries: int = 3
    backoff_base: float = 1.0
    timeout: float = 30.0

    def __post_init__(self):
        if self.per_host_min_interval <= 0 or self.backoff_base <= 0 or self.timeout <= 0:
            raise ValueError("durations must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")


@dataclass(frozen=True)
class FetchResult:
    final_url: str
    status: int
    body: bytes
    fetched_at: str  # RFC 3339, UTC
    backend: str  # "direct_http" | "browser_driver" | "manual"


def _now_rfc3339() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class HostLimiter:
    """Serializes requests per host and enforces a minimum inter-request gap."""

    def __init__(self, min_interval: float):
        self.min_interval = min_interval
        self._lock = threading.Lock()
        self._last: dict[str, float] = {}
        self._host_locks: dict[str, threading.Lock] = {}

    def wait(self, host: str) -> None:
        with self._lock:
            host_lock = self._host_locks.setdefault(host, threading.Lock())
        with host_lock:
            with self._lock:
                last = self._last.get(host)
            if last is not None:
                delay = last + self.min_interval - time.monotonic()
                if delay > 0:
                    time.sleep(delay)
            with self._lock:
                self._last[host] = time.monotonic()


class DirectHttpBackend:
    """Plain HTTP fetcher built on requests, with manual redirect following so
    loops can be detected and the hop cap enforced."""

    name = "direct_http"

    def __init__(self, policy: PolitenessPolicy, session: requests.Session | None = None):
        self.policy = policy
        self.limiter = HostLimiter(policy.per_host_min_interval)
        self.session = session or requests.Session()

    def fetch(self, url: str) -> FetchResult:
        attempts = self.policy.max_retries
        attempt = 0
        while True:
            try:
                result = self._fetch_once(url)
            except requests.Timeout as exc:
                if attempt >= attempts:
                    raise TimeoutExceeded(url) from exc
            except requests.ConnectionError as exc:
                if attempt >= attempts:
                    raise RetriesExhausted(url) from exc
            else:
                if result.status in RETRYABLE_STATUSES and attempt < attempts:
                    pass  # retry below
                elif result.status in RETRYABLE_STATUSES:
                    raise RetriesExhausted(f"{url}: status {result.status}")
                else:
                    return result
            time.sleep(self.policy.backoff_base * (2 ** attempt))
            attempt += 1

    def _fetch_once(self, url: str) -> FetchResult:
        seen = set()
        current = url
        for _ in range(MAX_REDIRECTS + 1):
            if current in seen:
                raise RedirectLoop(url)
            seen.add(current)
            host = urlsplit(current).netloc
            self.limiter.wait(host)
            resp = self.session.get(
                current, timeout=self.policy.timeout, allow_redirects=False
            )
            fetched_at = _now_rfc3339()
            if resp.is_redirect or resp.is_permanent_redirect:
                location = resp.headers.get("Location")
                if not location:
                    break
                current = strip_fragment(urljoin(current, location))
                continue
            ctype = resp.headers.get("Content-Type", "")
            if resp.ok and ctype and not any(
                t in ctype for t in ("html", "text/plain", "xml")
            ):
                raise NonHtmlContent(f"{current}: {ctype}")
            return FetchResult(
                final_url=strip_fragment(current),
                status=resp.status_code,
                body=resp.content,
                fetched_at=fetched_at,
                backend=self.name,
            )
        raise RedirectLoop(url)


class WebDriverBackend:
    """Minimal W3C WebDriver wire-protocol client.

    Creates one session lazily, navigates, waits for document-ready, and reads
    the rendered page source so script-injected content is captured.
    """

    name = "browser_driver"

    def __init__(self, endpoint: str, policy: PolitenessPolicy,
                 session: requests.Session | None = None,
                 ready_poll_interval: float = 0.1,
                 capabilities: dict | None = None):
        self.endpoint = endpoint.rstrip("/")
        self.policy = policy
        self.limiter = HostLimiter(policy.per_host_min_interval)
        self.http = session or requests.Session()
        self.ready_poll_interval = ready_poll_interval
        self.capabilities = capabilities or {
            "alwaysMatch": {"goog:chromeOptions": {"args": ["--headless=new"]}}
        }
        self._session_id: str | None = None

    def _request(self, method: str, path: str, payload: dict | None = None):
        try:
            resp = self.http.request(
                method,
                self.endpoint + path,
                json=payload if payload is not None else ({} if method == "POST" else None),
                timeout=self.policy.timeout,
            )
        except requests.RequestException as exc:
            raise DriverUnreachable(self.endpoint) from exc
        return resp

    def _ensure_session(self) -> str:
        if self._session_id is None:
            resp = self._request("POST", "/session", {"capabilities": self.capabilities})
            if resp.status_code != 200:
                raise SessionCreationFailed(f"{self.endpoint}: {resp.status_code}")
            try:
                value = resp.json()["value"]
                self._session_id = value.get("sessionId") or value["session_id"]
            except (KeyError, ValueError) as exc:
                raise SessionCreationFailed(str(exc)) from exc
        return self._session_id

    def _ready_state(self, session_id: str) -> str:
        resp = self._request(
            "POST",
            f"/session/{session_id}/execute/sync",
            {"script": "return document.readyState", "args": []},
        )
        if resp.status_code != 200:
            return "complete"  # driver without script support; trust navigation
        return resp.json().get("value", "complete")

    def fetch(self, url: str) -> FetchResult:
        session_id = self._ensure_session()
        host = urlsplit(url).netloc
        self.limiter.wait(host)
        resp = self._request("POST", f"/session/{session_id}/url", {"url": url})
        if resp.status_code != 200:
            raise FetchError(f"navigation failed: {resp.status_code}")
        deadline = time.monotonic() + self.policy.timeout
        while self._ready_state(session_id) != "complete":
            if time.monotonic() > deadline:
                raise TimeoutExceeded(url)
            time.sleep(self.ready_poll_interval)
        fetched_at = _now_rfc3339()
        current = self._request("GET", f"/session/{session_id}/url").json().get("value", url)
        source = self._request("GET", f"/session/{session_id}/source")
        if source.status_code != 200:
            raise FetchError(f"page source unavailable: {source.status_code}")
        body = source.json()["value"].encode("utf-8")
        return FetchResult(
            final_url=strip_fragment(current),
            status=200,
            body=body,
            fetched_at=fetched_at,
            backend=self.name,
        )

    def close(self) -> None:
        if self._session_id is not None:
            try:
                self._request("DELETE", f"/session/{self._session_id}")
            except DriverUnreachable:
                pass
            self._session_id = None


def browser_backend(endpoint: str | None = None,
                    policy: PolitenessPolicy | None = None) -> WebDriverBackend:
    """Handle for a W3C WebDriver endpoint; POLIMOD_WEBDRIVER_URL overrides."""
    endpoint = os.environ.get(WEBDRIVER_URL_ENV, endpoint)
    if not endpoint:
        raise DriverUnreachable("no WebDriver endpoint configured")
    return WebDriverBackend(endpoint, policy or PolitenessPolicy())


def make_backend(name: str, policy: PolitenessPolicy,
                 webdriver_url: str | None = None):
    if name == "direct_http":
        return DirectHttpBackend(policy)
    if name == "browser_driver":
        return browser_backend(webdriver_url, policy)
    raise ValueError(f"unknown backend: {name}")


def ingest_manual(html_file: Path, url: str) -> FetchResult:
    """Wrap a hand-saved page as a FetchResult with backend=manual.

    Downstream treats it like any crawled page except that it bypasses
    allow/block and hop checks and is never expanded.
    """
    path = Path(html_file)
    try:
        body = path.read_bytes()
    except OSError as exc:
        raise UnreadableFile(str(path)) from exc
    if not body.strip():
        raise EmptyFile(str(path))
    return FetchResult(
        final_url=strip_fragment(url),
        status=200,
        body=body,
        fetched_at=_now_rfc3339(),
        backend="manual",
    )
