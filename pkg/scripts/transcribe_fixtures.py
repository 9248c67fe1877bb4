#!/usr/bin/env python3
"""Write the published count tables as CSV fixtures, verifying every margin.

Two tables are transcribed from the dataset release:
  * per-topic code counts      -> fixtures/counts_by_topic.csv
  * per-platform code counts   -> fixtures/platform_code_counts.csv

Both are checked against their published totals before writing; a typo in
the transcription fails loudly here instead of inside the test suite.
"""
from __future__ import annotations

import csv
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

CODES = (
    "MODERATION CRITERIA/Definition",
    "MODERATION CRITERIA/Example",
    "MODERATION CRITERIA/Exception",
    "POLICY JUSTIFICATION/Community, Trust, & Safety",
    "POLICY JUSTIFICATION/Legal",
    "SAFEGUARDS/Active User Role",
    "SAFEGUARDS/Platform Detection Methods / Prevention Initiatives",
    "BINDING LEGALESE/Liability",
    "BINDING LEGALESE/User Rights Altered",
    "PLATFORM RESPONSE/Content-Targeted Enforcement",
    "PLATFORM RESPONSE/User-Targeted Enforcement",
    "PLATFORM RESPONSE/Investigation / Review",
    "REDRESS / APPEAL",
    "SIGNPOST",
)

TOPICS = ("CopyrightInfringement", "HarmfulSpeech", "MisleadingContent")

# rows follow CODES order; columns follow TOPICS order
TOPIC_TABLE = [
    (31, 51, 33),
    (384, 725, 1410),
    (187, 124, 130),
    (114, 390, 333),
    (422, 79, 73),
    (710, 353, 449),
    (142, 221, 432),
    (138, 61, 139),
    (298, 86, 169),
    (511, 279, 398),
    (250, 227, 333),
    (63, 182, 178),
    (320, 40, 65),
    (383, 216, 232),
]
TOPIC_TOTALS = (3953, 3034, 4374)

# platform -> counts in CODES order, with the published platform total
PLATFORM_TABLE = {
    "facebook": ([9, 181, 33, 41, 26, 40, 44, 3, 8, 62, 35, 39, 39, 39], 599),
    "youtube": ([4, 199, 73, 32, 36, 195, 130, 10, 26, 188, 94, 22, 45, 83], 1137),
    "instagram": ([1, 124, 26, 28, 25, 88, 37, 4, 8, 53, 20, 15, 19, 68], 516),
    "twitter": ([6, 154, 60, 44, 13, 76, 22, 7, 20, 104, 82, 53, 42, 50], 733),
    "linkedin": ([2, 113, 9, 51, 26, 68, 44, 6, 14, 50, 25, 8, 16, 67], 499),
    "wikipedia": ([3, 43, 3, 22, 3, 24, 10, 0, 5, 13, 21, 17, 11, 4], 179),
    "amazon": ([0, 39, 8, 10, 1, 10, 2, 6, 13, 14, 16, 4, 0, 13], 136),
    "pinterest": ([1, 96, 2, 7, 1, 7, 2, 0, 0, 9, 8, 0, 5, 3], 141),
    "github": ([1, 95, 15, 49, 14, 97, 18, 12, 24, 32, 17, 20, 19, 49], 462),
    "reddit": ([9, 60, 14, 16, 16, 56, 33, 4, 3, 46, 25, 14, 21, 18], 335),
    "vimeo": ([5, 78, 11, 4, 16, 20, 8, 1, 6, 11, 12, 8, 9, 24], 213),
    "wordpress": ([1, 49, 20, 17, 49, 70, 22, 6, 18, 53, 8, 11, 24, 17], 365),
    "msn": ([4, 21, 13, 8, 10, 27, 14, 3, 8, 8, 9, 3, 1, 19], 148),
    "tiktok": ([13, 106, 22, 47, 8, 41, 34, 10, 13, 47, 31, 30, 11, 14], 427),
    "xvideos": ([0, 8, 0, 1, 6, 12, 1, 10, 18, 5, 2, 0, 3, 9], 75),
    "tumblr": ([0, 91, 6, 19, 16, 47, 21, 4, 8, 15, 16, 13, 8, 26], 290),
    "pornhub": ([2, 69, 4, 35, 35, 80, 66, 27, 23, 59, 29, 24, 11, 22], 486),
    "nytimes": ([0, 35, 1, 17, 4, 5, 15, 5, 14, 9, 10, 2, 3, 0], 120),
    "flickr": ([0, 28, 1, 19, 9, 33, 16, 16, 16, 26, 12, 2, 7, 18], 203),
    "fandom": ([0, 29, 7, 9, 15, 29, 12, 5, 13, 23, 11, 2, 6, 11], 172),
    "ebay": ([4, 69, 19, 17, 1, 20, 11, 6, 7, 13, 11, 3, 1, 14], 196),
    "imdb": ([0, 12, 0, 0, 0, 2, 0, 9, 4, 6, 1, 0, 0, 1], 35),
    "medium": ([0, 70, 5, 8, 8, 23, 4, 3, 4, 19, 16, 15, 8, 14], 197),
    "soundcloud": ([13, 70, 9, 33, 26, 63, 16, 13, 14, 44, 43, 18, 16, 54], 432),
    "aliexpress": ([1, 48, 1, 16, 5, 5, 6, 12, 21, 11, 12, 2, 0, 1], 141),
    "twitch": ([2, 102, 12, 84, 83, 121, 80, 15, 27, 57, 78, 35, 45, 55], 796),
    "stackoverflow": ([1, 24, 1, 21, 2, 42, 18, 0, 1, 19, 23, 11, 4, 4], 171),
    "archive": ([0, 5, 2, 3, 0, 3, 1, 5, 6, 4, 1, 0, 2, 4], 36),
    "theguardian": ([0, 23, 3, 30, 5, 18, 18, 10, 16, 27, 19, 15, 1, 7], 192),
    "bbc": ([8, 51, 20, 3, 1, 3, 4, 0, 0, 2, 0, 0, 0, 5], 97),
    "xhamster": ([0, 19, 0, 5, 9, 11, 2, 7, 13, 10, 9, 3, 5, 4], 97),
    "quora": ([2, 25, 2, 9, 9, 16, 5, 1, 13, 13, 6, 0, 5, 9], 115),
    "w3": ([14, 31, 1, 9, 1, 2, 0, 1, 2, 0, 1, 0, 0, 1], 63),
    "sourceforge": ([0, 5, 0, 6, 4, 5, 1, 6, 13, 6, 7, 2, 4, 2], 61),
    "indeed": ([8, 73, 0, 15, 24, 27, 21, 30, 36, 28, 18, 3, 3, 8], 294),
    "etsy": ([0, 112, 20, 29, 35, 26, 9, 20, 24, 24, 21, 12, 14, 33], 379),
    "sciencedirect": ([1, 26, 7, 16, 8, 3, 15, 3, 3, 12, 1, 1, 0, 19], 115),
    "booking": ([0, 32, 0, 13, 0, 6, 20, 19, 12, 18, 11, 2, 1, 2], 136),
    "imgur": ([0, 40, 9, 22, 7, 26, 3, 2, 3, 17, 15, 6, 7, 9], 166),
    "spankbang": ([0, 15, 1, 2, 5, 5, 2, 9, 24, 3, 13, 1, 3, 1], 84),
    "researchgate": ([0, 31, 1, 12, 14, 54, 4, 15, 29, 22, 19, 3, 5, 32], 241),
    "washingtonpost": ([0, 17, 0, 6, 0, 6, 5, 6, 15, 6, 2, 2, 0, 0], 65),
    "xnxx": ([0, 9, 0, 3, 4, 12, 0, 17, 26, 5, 2, 2, 4, 7], 91),
}


def main() -> int:
    errors = []
    for topic_idx, expected in enumerate(TOPIC_TOTALS):
        got = sum(row[topic_idx] for row in TOPIC_TABLE)
        if got != expected:
            errors.append(f"topic column {TOPICS[topic_idx]}: {got} != {expected}")
    for platform, (counts, expected) in PLATFORM_TABLE.items():
        if len(counts) != len(CODES):
            errors.append(f"{platform}: {len(counts)} rows")
        if sum(counts) != expected:
            errors.append(f"{platform}: total {sum(counts)} != {expected}")
    if len(PLATFORM_TABLE) != 43:
        errors.append(f"{len(PLATFORM_TABLE)} platforms != 43")
    if errors:
        print("\n".join(errors), file=sys.stderr)
        return 1

    FIXTURES.mkdir(exist_ok=True)
    with (FIXTURES / "counts_by_topic.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["platform", "topic", "code", "count"])
        for code, row in zip(CODES, TOPIC_TABLE):
            for topic, count in zip(TOPICS, row):
                w.writerow(["all", topic, code, count])

    with (FIXTURES / "platform_code_counts.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["platform", "code", "count"])
        for platform, (counts, _) in PLATFORM_TABLE.items():
            for code, count in zip(CODES, counts):
                w.writerow([platform, code, count])

    grand = sum(t for _, (c, t) in PLATFORM_TABLE.items())
    print(f"wrote fixtures; topic total {sum(TOPIC_TOTALS)}, "
          f"platform total {grand}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
