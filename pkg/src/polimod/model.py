"""Shared domain types: moderation topics, keyword lists, platforms, and the codebook.

Every other module depends only on the types defined here.  The codebook and
keyword lists are loaded from a versioned JSON document shipped with the
package (``data/codebook.json``); see ``docs/formats.md`` for the schema.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Optional


class Topic(Enum):
    """The three moderation topics. Closed set."""

    CopyrightInfringement = "CopyrightInfringement"
    HarmfulSpeech = "HarmfulSpeech"
    MisleadingContent = "MisleadingContent"

    @property
    def dir_name(self) -> str:
        """Directory-friendly name used in the corpus layout."""
        return {
            Topic.CopyrightInfringement: "copyright_infringement",
            Topic.HarmfulSpeech: "harmful_speech",
            Topic.MisleadingContent: "misleading_content",
        }[self]

    @classmethod
    def parse(cls, s: str) -> "Topic":
        for t in cls:
            if s == t.value or s == t.dir_name:
                return t
        raise ValueError(f"unknown topic: {s!r}")


@dataclass(frozen=True)
class KeywordList:
    """Ordered list of lowercase stems gating one topic."""

    topic: Topic
    stems: tuple[str, ...]

    def __post_init__(self):
        if not self.stems:
            raise ValueError("stems must be non-empty")
        if any(s != s.lower() for s in self.stems):
            raise ValueError("stems must be lowercase")
        if len(set(self.stems)) != len(self.stems):
            raise ValueError("duplicate stems")


@dataclass(frozen=True)
class Platform:
    """One platform under study, keyed by registrable domain."""

    id: str
    display_name: str
    tranco_rank: Optional[int] = None
    # (has_tos, tos_on_landing, has_community_guidelines, cg_on_landing,
    #  has_help_center, hc_on_landing); X_on_landing implies has_X
    location_meta: Optional[dict] = None

    def __post_init__(self):
        if self.id != self.id.lower():
            raise ValueError("platform id must be lowercase")
        if self.tranco_rank is not None and self.tranco_rank <= 0:
            raise ValueError("tranco_rank must be positive")
        if self.location_meta is not None:
            m = self.location_meta
            for base, landing in (
                ("has_tos", "tos_on_landing"),
                ("has_community_guidelines", "cg_on_landing"),
                ("has_help_center", "hc_on_landing"),
            ):
                if m.get(landing) and not m.get(base):
                    raise ValueError(f"{landing} requires {base}")


@dataclass(frozen=True)
class CodePath:
    """A node of the codebook tree. Annotations attach only at leaves."""

    top_level: str
    sub_code: Optional[str] = None

    def normalized(self) -> str:
        if self.sub_code is None:
            return self.top_level
        return f"{self.top_level}/{self.sub_code}"

    def __str__(self) -> str:
        return self.normalized()


@dataclass(frozen=True)
class CodebookNode:
    name: str
    memo: str
    subs: tuple["CodebookNode", ...] = ()


@dataclass(frozen=True)
class Codebook:
    """The annotation scheme: a two-level tree of codes with memo text."""

    version: str
    nodes: tuple[CodebookNode, ...]

    def leaves(self) -> list[CodePath]:
        """All assignable code paths, in tree order."""
        out: list[CodePath] = []
        for node in self.nodes:
            if node.subs:
                out.extend(CodePath(node.name, sub.name) for sub in node.subs)
            else:
                out.append(CodePath(node.name))
        return out

    def parse_path(self, s: str) -> CodePath:
        """Resolve a normalized "TOP/Sub" string against this tree.

        Top-level names may themselves contain "/" (e.g. REDRESS / APPEAL),
        so candidates are checked against known node names rather than split
        blindly at the first separator.
        """
        for node in self.nodes:
            if s == node.name:
                return CodePath(node.name)
            prefix = node.name + "/"
            if s.startswith(prefix):
                return CodePath(node.name, s[len(prefix):])
        raise ValueError(f"unresolvable code path: {s!r}")

    def parse_path_or_none(self, s: str) -> Optional[CodePath]:
        try:
            return self.parse_path(s)
        except ValueError:
            return None

    def to_json(self) -> str:
        doc = {
            "version": self.version,
            "nodes": [
                {
                    "name": n.name,
                    "memo": n.memo,
                    "subs": [{"name": s.name, "memo": s.memo} for s in n.subs],
                }
                for n in self.nodes
            ],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Codebook":
        doc = json.loads(text)
        nodes = tuple(
            CodebookNode(
                name=n["name"],
                memo=n["memo"],
                subs=tuple(CodebookNode(s["name"], s["memo"]) for s in n["subs"]),
            )
            for n in doc["nodes"]
        )
        return cls(version=doc["version"], nodes=nodes)


def _load_data() -> dict:
    text = resources.files("polimod.data").joinpath("codebook.json").read_text("utf-8")
    return json.loads(text)


def canonical_codebook() -> Codebook:
    """The fixed annotation scheme: 6 categories with subcodes plus two
    assignable top-level codes, 14 leaves in total."""
    return Codebook.from_json(json.dumps(_load_data()["codebook"]))


def validate_code(path: CodePath, book: Codebook) -> bool:
    """True iff ``path`` names a leaf of ``book``."""
    return path in set(book.leaves())


def canonical_keywords() -> list[KeywordList]:
    """The topic-wise keyword stems gating page retention and extraction.

    Entries are truncated stems ("abus", "violen") matched as
    case-insensitive substrings, not whole words.
    """
    doc = _load_data()["keywords"]
    return [
        KeywordList(topic=Topic.parse(t), stems=tuple(stems))
        for t, stems in doc.items()
    ]


# Leaves counted toward policy completeness: every subcode under the first
# five categories.  BINDING LEGALESE and SIGNPOST are assignable but not
# required.
COMPLETENESS_LEAVES: tuple[str, ...] = (
    "POLICY JUSTIFICATION/Community, Trust, & Safety",
    "POLICY JUSTIFICATION/Legal",
    "MODERATION CRITERIA/Definition",
    "MODERATION CRITERIA/Example",
    "MODERATION CRITERIA/Exception",
    "SAFEGUARDS/Active User Role",
    "SAFEGUARDS/Platform Detection Methods / Prevention Initiatives",
    "PLATFORM RESPONSE/User-Targeted Enforcement",
    "PLATFORM RESPONSE/Content-Targeted Enforcement",
    "PLATFORM RESPONSE/Investigation / Review",
    "REDRESS / APPEAL",
)
