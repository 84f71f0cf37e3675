"""Tweet tokenizer: URLs, @mentions, #hashtags, emoticons, then words.

Extraction order matters and is fixed: URLs first (so "http://x.co" is not
shredded into words), then mentions, hashtags, emoticons from the built-in
table, and finally lowercase word tokens split on non-alphanumerics with
apostrophes kept inside words ("don't" stays one token).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class TokenKind(str, Enum):
    WORD = "word"
    MENTION = "mention"
    HASHTAG = "hashtag"
    URL = "url"
    EMOTICON = "emoticon"
    OTHER = "other"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: TokenKind


# Versioned emoticon table: surface -> polarity (+1 positive, -1 negative).
# Western-style ASCII emoticons plus a small set of common emoji codepoints.
EMOTICON_TABLE_VERSION = "1"

_ASCII_EMOTICONS: dict[str, int] = {
    ":)": 1, ":-)": 1, ":]": 1, ":-]": 1, ":}": 1, "(:": 1, "(-:": 1,
    ":D": 1, ":-D": 1, "=)": 1, "=D": 1, ";)": 1, ";-)": 1, ":P": 1,
    ":-P": 1, ":p": 1, ":-p": 1, "xD": 1, "XD": 1, "<3": 1, "^_^": 1,
    "^-^": 1, ":3": 1, "c:": 1, ":'D": 1,
    ":(": -1, ":-(": -1, ":[": -1, ":-[": -1, ":{": -1, "):": -1,
    ")-:": -1, "D:": -1, "D=": -1, "=(": -1, ";(": -1, ":'(": -1,
    ":/": -1, ":-/": -1, ":\\": -1, ":-\\": -1, ">:(": -1, "</3": -1,
    "._.": -1, "T_T": -1, ";_;": -1, ":|": -1, ":-|": -1,
}

_EMOJI_EMOTICONS: dict[str, int] = {
    "\U0001F600": 1, "\U0001F601": 1, "\U0001F602": 1, "\U0001F603": 1,
    "\U0001F604": 1, "\U0001F605": 1, "\U0001F606": 1, "\U0001F609": 1,
    "\U0001F60A": 1, "\U0001F60D": 1, "\U0001F618": 1, "\U0001F642": 1,
    "\U0001F643": 1, "\U0001F60E": 1, "\U0001F917": 1, "\U0001F44D": 1,
    "❤": 1, "\U0001F495": 1, "\U0001F389": 1, "\U0001F61C": 1,
    "\U0001F923": 1, "\U0001F970": 1,
    "\U0001F61E": -1, "\U0001F61F": -1, "\U0001F620": -1, "\U0001F621": -1,
    "\U0001F622": -1, "\U0001F62D": -1, "\U0001F614": -1, "\U0001F615": -1,
    "\U0001F641": -1, "☹": -1, "\U0001F44E": -1, "\U0001F494": -1,
    "\U0001F629": -1, "\U0001F62B": -1, "\U0001F624": -1, "\U0001F612": -1,
}

EMOTICONS: dict[str, int] = {**_ASCII_EMOTICONS, **_EMOJI_EMOTICONS}

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@(\w+)")
_HASHTAG_RE = re.compile(r"#(\w+)")
_WORD_RE = re.compile(r"[a-z0-9]+(?:'[a-z0-9]+)*")


def _emoticon_regex() -> re.Pattern:
    # Longest-first alternation so ":-)" wins over ":-". Emoticons that start
    # or end with a word character (XD, D:, c:, ^_^) only match standalone,
    # bounded by whitespace or string edges; pure-punctuation ones and emoji
    # match anywhere.
    surfaces = sorted(EMOTICONS, key=len, reverse=True)
    free, bounded = [], []
    for s in surfaces:
        if s[0].isalnum() or s[-1].isalnum():
            bounded.append(re.escape(s))
        else:
            free.append(re.escape(s))
    parts = []
    if bounded:
        parts.append(r"(?:(?<=\s)|^)(?:%s)(?=\s|$)" % "|".join(bounded))
    if free:
        parts.append("(?:%s)" % "|".join(free))
    return re.compile("|".join(parts))


_EMOTICON_RE = _emoticon_regex()


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens, ordered by position in the original text."""
    found: list[tuple[int, Token]] = []
    remaining = text

    def take(pattern: re.Pattern, kind: TokenKind, group: int = 0) -> None:
        nonlocal remaining
        out = []
        last = 0
        for m in pattern.finditer(remaining):
            surface = m.group(group)
            if kind in (TokenKind.MENTION, TokenKind.HASHTAG, TokenKind.WORD):
                surface = surface.lower()
            found.append((m.start(), Token(surface, kind)))
            out.append(remaining[last : m.start()])
            # Preserve offsets by blanking the consumed span.
            out.append(" " * (m.end() - m.start()))
            last = m.end()
        out.append(remaining[last:])
        remaining = "".join(out)

    take(_URL_RE, TokenKind.URL)
    take(_MENTION_RE, TokenKind.MENTION, group=1)
    take(_HASHTAG_RE, TokenKind.HASHTAG, group=1)
    take(_EMOTICON_RE, TokenKind.EMOTICON)
    remaining = remaining.lower()
    take(_WORD_RE, TokenKind.WORD)

    found.sort(key=lambda pair: pair[0])
    return [tok for _, tok in found]


def word_tokens(tokens: list[Token]) -> list[Token]:
    return [t for t in tokens if t.kind is TokenKind.WORD]
