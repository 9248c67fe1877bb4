#!/usr/bin/env python3
"""Write fixtures/platforms.json and fixtures/descriptive_metrics.csv.

Per-platform policy-location metadata reproduces the published aggregate
observations: 42/43 platforms have a ToS (w3 is the exception, and every ToS
is linked from the landing page), 34/43 have community guidelines with 12 of
those linked from the landing page, and 36/43 have a help center containing
moderation policy with 35 of those linked from the landing page (quora's is
login-gated).  The per-platform assignment of the remaining bits is
editorial: only the aggregates were published.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

PLATFORMS = [
    "facebook", "youtube", "instagram", "twitter", "linkedin", "wikipedia",
    "amazon", "pinterest", "github", "reddit", "vimeo", "wordpress", "msn",
    "tiktok", "xvideos", "tumblr", "pornhub", "nytimes", "flickr", "fandom",
    "ebay", "imdb", "medium", "soundcloud", "aliexpress", "twitch",
    "stackoverflow", "archive", "theguardian", "bbc", "xhamster", "quora",
    "w3", "sourceforge", "indeed", "etsy", "sciencedirect", "booking",
    "imgur", "spankbang", "researchgate", "washingtonpost", "xnxx",
]

NO_TOS = {"w3"}
NO_CG = {"amazon", "imdb", "sciencedirect", "booking", "indeed",
         "sourceforge", "w3", "washingtonpost", "aliexpress"}
CG_ON_LANDING = {"facebook", "youtube", "instagram", "twitter", "linkedin",
                 "tiktok", "reddit", "twitch", "pinterest", "tumblr",
                 "vimeo", "soundcloud"}
NO_HC = {"w3", "sourceforge", "washingtonpost", "archive", "bbc",
         "theguardian", "nytimes"}
HC_NOT_ON_LANDING = {"quora"}

DESCRIPTIVE = [
    # topic, segments, coded_pages, total_pages, coded_chars, total_chars
    ("CopyrightInfringement", 3953, 390, 2739, 475631, 8275886),
    ("HarmfulSpeech", 3034, 342, 1546, 401294, 5580974),
    ("MisleadingContent", 4374, 570, 4229, 584525, 19671028),
]


def main() -> int:
    entries = []
    for rank, pid in enumerate(PLATFORMS, start=1):
        has_tos = pid not in NO_TOS
        has_cg = pid not in NO_CG
        has_hc = pid not in NO_HC
        entries.append({
            "id": pid,
            "display_name": pid,
            "tranco_rank": rank,
            "location_meta": {
                "has_tos": has_tos,
                "tos_on_landing": has_tos,
                "has_community_guidelines": has_cg,
                "cg_on_landing": has_cg and pid in CG_ON_LANDING,
                "has_help_center": has_hc,
                "hc_on_landing": has_hc and pid not in HC_NOT_ON_LANDING,
            },
        })

    def count(key):
        return sum(1 for e in entries if e["location_meta"][key])

    checks = {
        "has_tos": 42, "tos_on_landing": 42,
        "has_community_guidelines": 34, "cg_on_landing": 12,
        "has_help_center": 36, "hc_on_landing": 35,
    }
    bad = [f"{k}: {count(k)} != {want}" for k, want in checks.items()
           if count(k) != want]
    if bad or len(entries) != 43:
        print("\n".join(bad or [f"{len(entries)} platforms"]), file=sys.stderr)
        return 1

    FIXTURES.mkdir(exist_ok=True)
    (FIXTURES / "platforms.json").write_text(
        json.dumps({"platforms": entries}, indent=2) + "\n", encoding="utf-8")

    seg_total = sum(r[1] for r in DESCRIPTIVE)
    assert seg_total == 11361, seg_total
    assert sum(r[2] for r in DESCRIPTIVE) == 1302
    assert sum(r[3] for r in DESCRIPTIVE) == 8514
    assert sum(r[4] for r in DESCRIPTIVE) == 1461450
    assert sum(r[5] for r in DESCRIPTIVE) == 33527888
    with (FIXTURES / "descriptive_metrics.csv").open("w", newline="") as fh:
        fh.write("topic,segments,coded_pages,total_pages,coded_chars,total_chars\n")
        for row in DESCRIPTIVE:
            fh.write(",".join(str(x) for x in row) + "\n")
    print("wrote platforms.json and descriptive_metrics.csv")
    return 0


if __name__ == "__main__":
    sys.exit(main())
