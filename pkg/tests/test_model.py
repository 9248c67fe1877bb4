import json

import pytest

from polimod.model import (
    COMPLETENESS_LEAVES,
    Codebook,
    CodePath,
    KeywordList,
    Platform,
    Topic,
    canonical_codebook,
    canonical_keywords,
    validate_code,
)


def test_topic_parse_round_trip():
    for topic in Topic:
        assert Topic.parse(topic.value) is topic
    with pytest.raises(ValueError):
        Topic.parse("Spam")


def test_codebook_has_fourteen_assignable_leaves():
    book = canonical_codebook()
    leaves = book.leaves()
    assert len(leaves) == 14
    names = {leaf.normalized() for leaf in leaves}
    assert "REDRESS / APPEAL" in names
    assert "SIGNPOST" in names
    assert "POLICY JUSTIFICATION/Legal" in names


def test_completeness_leaves_exclude_signpost_and_legalese():
    assert len(COMPLETENESS_LEAVES) == 11
    for leaf in COMPLETENESS_LEAVES:
        assert not leaf.startswith("BINDING LEGALESE")
        assert leaf != "SIGNPOST"


def test_parse_path_handles_slash_in_top_level_name():
    book = canonical_codebook()
    path = book.parse_path("REDRESS / APPEAL")
    assert path == CodePath("REDRESS / APPEAL")
    sub = book.parse_path(
        "SAFEGUARDS/Platform Detection Methods / Prevention Initiatives")
    assert sub.sub_code == "Platform Detection Methods / Prevention Initiatives"


def test_non_leaf_codes_do_not_validate():
    book = canonical_codebook()
    assert validate_code(book.parse_path("POLICY JUSTIFICATION/Legal"), book)
    assert not validate_code(CodePath("POLICY JUSTIFICATION"), book)
    ghost = book.parse_path_or_none("POLICY JUSTIFICATION/Absent")
    assert ghost is None or not validate_code(ghost, book)
    assert book.parse_path_or_none("NO SUCH CATEGORY") is None


def test_codebook_json_round_trip():
    book = canonical_codebook()
    clone = Codebook.from_json(book.to_json())
    assert [l.normalized() for l in clone.leaves()] == \
        [l.normalized() for l in book.leaves()]


def test_canonical_keywords_cover_all_topics():
    lists = canonical_keywords()
    assert {kl.topic for kl in lists} == set(Topic)
    copyright = next(kl for kl in lists if kl.topic is Topic.CopyrightInfringement)
    assert "copyright" in copyright.stems and "dmca" in copyright.stems
    misleading = next(kl for kl in lists if kl.topic is Topic.MisleadingContent)
    assert len(misleading.stems) == 15


def test_keyword_list_rejects_bad_stems():
    with pytest.raises(ValueError):
        KeywordList(topic=Topic.CopyrightInfringement, stems=())
    with pytest.raises(ValueError):
        KeywordList(topic=Topic.CopyrightInfringement, stems=("DMCA",))
    with pytest.raises(ValueError):
        KeywordList(topic=Topic.CopyrightInfringement, stems=("dmca", "dmca"))


def test_platform_metadata_validation():
    Platform(id="example", display_name="Example", location_meta={
        "has_tos": True, "tos_on_landing": True,
        "has_community_guidelines": False, "cg_on_landing": False,
        "has_help_center": True, "hc_on_landing": False,
    })
    with pytest.raises(ValueError):
        Platform(id="Example", display_name="Example")
    with pytest.raises(ValueError):
        Platform(id="example", display_name="e", location_meta={
            "has_tos": False, "tos_on_landing": True,
        })
