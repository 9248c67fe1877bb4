"""Stopword-profile language identification for retained-page filtering.

A deliberately small classifier: pages are scored by the density of
function words from per-language profiles.  It only needs to separate the
languages that show up in policy crawls reliably enough to keep English
pages and drop the rest; texts under 20 characters are labeled "und".
"""
from __future__ import annotations

import re

MIN_LENGTH = 20

_PROFILES: dict[str, frozenset[str]] = {
    "en": frozenset(
        """the of and to in a is that for on with as are this be by you we it
        or not your from at have has will may can our their which if should
        any all use terms content policy about other than these when what
        who do does please must out up been was were its they them an
        including without more also such only under after before between
        where how why no so but into over each both against during through
        available service account information user users right rights"""
        .split()
    ),
    "de": frozenset(
        """der die das und nicht ist sie von den dem des ein eine einen einem
        einer zu mit auf für im in als auch oder werden wird wurde bei nach
        aus durch über unter gegen ohne um dass wenn aber wie nur noch schon
        kann können müssen dürfen nutzer inhalte rechte diese dieser dieses
        sind haben hat sein ihre ihrer unsere unserer wir ihr es am zur zum
        sowie bzw gemäß laut beim vom"""
        .split()
    ),
    "fr": frozenset(
        """le la les de des du et un une est sont que qui pour dans par sur
        avec ne pas plus ce cette ces vous nous ils elles au aux comme mais
        ou où si leur leurs votre vos notre nos être avoir fait tout tous
        peut doit sans sous entre contre pendant selon ainsi donc alors"""
        .split()
    ),
    "es": frozenset(
        """el la los las de del y un una es son que para en por con no se
        su sus este esta estos estas usted nosotros como pero o donde si al
        lo le les ser estar hay puede debe sin sobre entre contra durante
        según así entonces también más muy cuando"""
        .split()
    ),
}

_TOKEN_RE = re.compile(r"[a-zA-ZäöüßàâçéèêëîïôùûüÿñáíóúÀ-ÿ]+")


def detect_language(text: str) -> str:
    """Best-guess ISO-639-1 code for ``text``; "und" below 20 characters."""
    if len(text) < MIN_LENGTH:
        return "und"
    tokens = [t.lower() for t in _TOKEN_RE.findall(text)]
    if not tokens:
        return "und"
    scores = {
        lang: sum(1 for t in tokens if t in profile)
        for lang, profile in _PROFILES.items()
    }
    best = max(scores, key=lambda k: (scores[k], k == "en"))
    if scores[best] == 0:
        return "und"
    return best
