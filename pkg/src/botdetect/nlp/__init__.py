"""Text analysis for tweets: tokenization, coarse POS tags, sentiment."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .lexicons import SentimentLexicons, load_default_lexicons
from .postag import POS_TAG_ORDER, PosTag, tag_tokens, tag_word
from .sentiment import TweetSentiment, score_sentiment
from .tokenizer import (
    EMOTICON_TABLE_VERSION,
    EMOTICONS,
    Token,
    TokenKind,
    tokenize,
    word_tokens,
)

__all__ = [
    "EMOTICON_TABLE_VERSION",
    "EMOTICONS",
    "NlpPipeline",
    "POS_TAG_ORDER",
    "PosTag",
    "SentimentLexicons",
    "Token",
    "TokenKind",
    "TweetAnalysis",
    "TweetSentiment",
    "load_default_lexicons",
    "score_sentiment",
    "tag_tokens",
    "tag_word",
    "tokenize",
    "word_tokens",
]


@dataclass(frozen=True)
class TweetAnalysis:
    tokens: list[Token]
    tags: list[Optional[PosTag]]
    sentiment: TweetSentiment

    def tag_counts(self) -> dict[PosTag, int]:
        counts = {tag: 0 for tag in POS_TAG_ORDER}
        for tag in self.tags:
            if tag is not None:
                counts[tag] += 1
        return counts


class NlpPipeline:
    """One-stop tweet analyzer; loads bundled lexicons unless given others."""

    def __init__(self, lexicons: Optional[SentimentLexicons] = None):
        self.lexicons = lexicons if lexicons is not None else load_default_lexicons()

    def analyze(self, text: str) -> TweetAnalysis:
        tokens = tokenize(text)
        return TweetAnalysis(
            tokens=tokens,
            tags=tag_tokens(tokens),
            sentiment=score_sentiment(tokens, self.lexicons),
        )
