"""Per-tweet sentiment scoring against word and emoticon lexicons."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .lexicons import SentimentLexicons
from .tokenizer import EMOTICONS, Token, TokenKind


@dataclass(frozen=True)
class TweetSentiment:
    """Lexicon scores for one tweet.

    Score fields are unweighted means over the tweet's matched words and
    are ``None`` when no word matched the corresponding lexicon.
    ``polarization`` is (pos - neg) / (pos + neg) over polarity-word
    counts, ``None`` when the tweet has no polar words.
    """

    valence: Optional[float]
    arousal: Optional[float]
    dominance: Optional[float]
    happiness: Optional[float]
    polarization: Optional[float]
    positive_words: int
    negative_words: int
    positive_emoticons: int
    negative_emoticons: int

    @property
    def emoticons(self) -> int:
        return self.positive_emoticons + self.negative_emoticons


def _mean_of_matches(words: list[str], table) -> Optional[float]:
    matched = [table[w] for w in words if w in table]
    if not matched:
        return None
    return sum(matched) / len(matched)


def score_sentiment(
    tokens: list[Token], lexicons: SentimentLexicons
) -> TweetSentiment:
    words = [t.surface for t in tokens if t.kind is TokenKind.WORD]

    positive = sum(1 for w in words if lexicons.polarity.get(w) == 1)
    negative = sum(1 for w in words if lexicons.polarity.get(w) == -1)
    polar = positive + negative
    polarization = (positive - negative) / polar if polar else None

    emo_pos = emo_neg = 0
    for tok in tokens:
        if tok.kind is not TokenKind.EMOTICON:
            continue
        if EMOTICONS.get(tok.surface, 0) > 0:
            emo_pos += 1
        else:
            emo_neg += 1

    return TweetSentiment(
        valence=_mean_of_matches(words, lexicons.valence),
        arousal=_mean_of_matches(words, lexicons.arousal),
        dominance=_mean_of_matches(words, lexicons.dominance),
        happiness=_mean_of_matches(words, lexicons.happiness),
        polarization=polarization,
        positive_words=positive,
        negative_words=negative,
        positive_emoticons=emo_pos,
        negative_emoticons=emo_neg,
    )
