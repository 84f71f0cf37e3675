"""Sentiment lexicon loaders.

Lexicons ship as tab-separated package data.  Lines starting with ``#``
are comments.  Scores follow the usual affective-norm conventions:
valence, arousal, dominance, and happiness on 1-9 scales, polarity as
+1 or -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping

from ..errors import DataError


@dataclass(frozen=True)
class SentimentLexicons:
    valence: Mapping[str, float] = field(default_factory=dict)
    arousal: Mapping[str, float] = field(default_factory=dict)
    dominance: Mapping[str, float] = field(default_factory=dict)
    happiness: Mapping[str, float] = field(default_factory=dict)
    polarity: Mapping[str, int] = field(default_factory=dict)


def _read_rows(text: str, n_fields: int, where: str) -> list[list[str]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != n_fields:
            raise DataError(
                "%s line %d: expected %d tab-separated fields, got %d"
                % (where, lineno, n_fields, len(fields))
            )
        rows.append(fields)
    return rows


def _score(raw: str, where: str, word: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise DataError("%s: score for %r is not a number" % (where, word))


def parse_vad(text: str, where: str = "vad") -> tuple[dict, dict, dict]:
    valence, arousal, dominance = {}, {}, {}
    for word, v, a, d in _read_rows(text, 4, where):
        key = word.lower()
        valence[key] = _score(v, where, word)
        arousal[key] = _score(a, where, word)
        dominance[key] = _score(d, where, word)
    return valence, arousal, dominance


def parse_scored(text: str, where: str = "lexicon") -> dict[str, float]:
    return {w.lower(): _score(s, where, w) for w, s in _read_rows(text, 2, where)}


def parse_polarity(text: str, where: str = "polarity") -> dict[str, int]:
    out = {}
    for word, p in _read_rows(text, 2, where):
        try:
            value = int(p)
        except ValueError:
            raise DataError("%s: polarity for %r is not an integer" % (where, word))
        if value not in (-1, 1):
            raise DataError("%s: polarity for %r must be +1 or -1" % (where, word))
        out[word.lower()] = value
    return out


def _package_text(filename: str) -> str:
    return (
        resources.files("botdetect.nlp")
        .joinpath("data")
        .joinpath(filename)
        .read_text(encoding="utf-8")
    )


def load_default_lexicons() -> SentimentLexicons:
    """Load the lexicons bundled with the package."""
    valence, arousal, dominance = parse_vad(_package_text("vad.tsv"), "vad.tsv")
    happiness = parse_scored(_package_text("happiness.tsv"), "happiness.tsv")
    polarity = parse_polarity(_package_text("polarity.tsv"), "polarity.tsv")
    return SentimentLexicons(
        valence=valence,
        arousal=arousal,
        dominance=dominance,
        happiness=happiness,
        polarity=polarity,
    )
