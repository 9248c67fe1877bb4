"""URL normalization, relative resolution, and allow/blocklist admission."""
from __future__ import annotations

from dataclasses import dataclass
from urllib.parse import urljoin, urlsplit, urlunsplit

REJECTED_SCHEMES = {"mailto", "javascript", "tel", "data", "ftp"}


@dataclass(frozen=True)
class Rejected:
    reason: str  # "scheme" | "self_anchor" | "malformed"


def normalize_url(base: str, href: str):
    """Resolve ``href`` against ``base`` and canonicalize.

    Strips the fragment, lowercases scheme and host, and rejects non-http(s)
    schemes as well as pure in-page anchors (links that equal the base after
    fragment stripping).  Returns either a URL string or ``Rejected``.
    """
    href = href.strip()
    try:
        pre = urlsplit(href)
    except ValueError:
        return Rejected("malformed")
    if pre.scheme and pre.scheme.lower() in REJECTED_SCHEMES:
        return Rejected("scheme")
    try:
        joined = urlsplit(urljoin(base, href))
    except ValueError:
        return Rejected("malformed")
    scheme = joined.scheme.lower()
    if scheme not in ("http", "https"):
        return Rejected("scheme")
    if not joined.netloc:
        return Rejected("malformed")
    normalized = urlunsplit(
        (scheme, joined.netloc.lower(), joined.path, joined.query, "")
    )
    base_stripped = strip_fragment(base)
    if normalized == base_stripped:
        return Rejected("self_anchor")
    return normalized


def strip_fragment(url: str) -> str:
    parts = urlsplit(url)
    return urlunsplit(
        (parts.scheme.lower(), parts.netloc.lower(), parts.path, parts.query, "")
    )


def url_admitted(url: str, allow: list[str], block: list[str]) -> bool:
    """True iff ``url`` contains at least one allow substring and no block
    substring.  Matching is case-insensitive on the host portion and
    case-sensitive on the path; pattern strings may span the boundary, so each
    pattern is checked against a host-lowercased rendering of the URL.
    """
    parts = urlsplit(url)
    canonical = urlunsplit(
        (parts.scheme.lower(), parts.netloc.lower(), parts.path, parts.query, parts.fragment)
    )

    def contains(pattern: str) -> bool:
        if pattern == "*":
            return True
        if pattern in canonical:
            return True
        # patterns that only name a host still match case-insensitively
        return "/" not in pattern and pattern.lower() in parts.netloc.lower()

    if any(contains(b) for b in block):
        return False
    return any(contains(a) for a in allow)
