"""Rule-based part-of-speech tagger over nine coarse tags.

Two stages: closed-class lookup tables first (modals, predeterminers,
wh-words, pronouns, interjections, fixed adverbs), then published suffix
and context rules (verb after a modal or "to", common verb and adjective
tables, -ly adverbs, -ing/-ed verbs, adjectival suffixes), with noun as
the fallback for anything still untagged.  Only word tokens receive tags;
mentions, hashtags, URLs, and emoticons yield ``None``.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional

from .tokenizer import Token, TokenKind


class PosTag(str, Enum):
    VERB = "verb"
    NOUN = "noun"
    ADJECTIVE = "adjective"
    MODAL_AUXILIARY = "modal_auxiliary"
    PREDETERMINER = "predeterminer"
    INTERJECTION = "interjection"
    ADVERB = "adverb"
    WH_WORD = "wh_word"
    PRONOUN = "pronoun"


# Canonical tag order for feature vectors.
POS_TAG_ORDER: tuple[PosTag, ...] = (
    PosTag.VERB,
    PosTag.NOUN,
    PosTag.ADJECTIVE,
    PosTag.MODAL_AUXILIARY,
    PosTag.PREDETERMINER,
    PosTag.INTERJECTION,
    PosTag.ADVERB,
    PosTag.WH_WORD,
    PosTag.PRONOUN,
)

MODAL_AUXILIARIES = frozenset(
    "can could may might must shall should will would ought".split()
)

PREDETERMINERS = frozenset(
    "all both half double twice such quite rather".split()
)

WH_WORDS = frozenset(
    "what when where which who whom whose why how whatever whenever "
    "wherever whichever whoever however".split()
)

PRONOUNS = frozenset(
    "i me my mine myself we us our ours ourselves you your yours yourself "
    "yourselves he him his himself she her hers herself it its itself they "
    "them their theirs themselves this that these those someone somebody "
    "something anyone anybody anything everyone everybody everything "
    "no-one nobody nothing one".split()
)

INTERJECTIONS = frozenset(
    "oh wow hey hi hello yay ouch oops ugh hmm huh aha alas bravo hurray "
    "yikes whoa omg lol lmao haha hehe yeah yep nope ok okay please thanks "
    "congrats damn gosh".split()
)

ADVERBS = frozenset(
    "not never always often sometimes rarely seldom now then here there "
    "very too also just only quite almost already still yet soon again "
    "maybe perhaps really so well even ever far away back today tomorrow "
    "yesterday once".split()
)

COMMON_VERBS = frozenset(
    "be am is are was were been being have has had do does did go goes "
    "went gone get gets got make makes made know knows knew think thinks "
    "thought take takes took see sees saw come comes came want wants "
    "wanted look looks looked use uses used find finds found give gives "
    "gave tell tells told work works worked call calls called try tries "
    "tried ask asks asked need needs feel feels felt become leave leaves "
    "left put mean means keep keeps kept let begin begins seem seems help "
    "helps show shows hear hears play plays run runs move moves live "
    "lives believe believes bring brings happen happens write writes "
    "say says said love loves like likes hate hates follow follows "
    "followed retweet retweets tweeted tweet vote votes win wins lose "
    "loses read reads watch watches eat eats drink drinks buy buys sell "
    "sells pay pays meet meets stop stops start starts turn turns "
    "check share shares post posts click".split()
)

COMMON_ADJECTIVES = frozenset(
    "good bad great small large big little new old young high low long "
    "short right wrong same different important public private early late "
    "hard easy free full empty strong weak true false happy sad best "
    "worst better worse nice fine real sure last next first second few "
    "many much more most less least own other another able hot cold warm "
    "cool fast slow rich poor dark light deep clear open close dead "
    "alive safe busy ready cheap fake awesome amazing terrible horrible "
    "beautiful ugly funny serious crazy smart stupid weird huge tiny".split()
)

_ADJECTIVE_SUFFIXES = (
    "ful", "less", "ous", "ive", "able", "ible", "ish", "al", "ic",
)


def tag_word(word: str, prev_word: Optional[str] = None) -> PosTag:
    """Tag a single lowercase word, given the previous word if any."""
    if word in MODAL_AUXILIARIES:
        return PosTag.MODAL_AUXILIARY
    if word in PREDETERMINERS:
        return PosTag.PREDETERMINER
    if word in WH_WORDS:
        return PosTag.WH_WORD
    if word in PRONOUNS:
        return PosTag.PRONOUN
    if word in INTERJECTIONS:
        return PosTag.INTERJECTION
    if word in ADVERBS:
        return PosTag.ADVERB
    if prev_word is not None and (
        prev_word in MODAL_AUXILIARIES or prev_word == "to"
    ):
        return PosTag.VERB
    if word in COMMON_VERBS:
        return PosTag.VERB
    if word in COMMON_ADJECTIVES:
        return PosTag.ADJECTIVE
    if word.endswith("ly") and len(word) >= 5:
        return PosTag.ADVERB
    if (word.endswith("ing") or word.endswith("ed")) and len(word) >= 5:
        return PosTag.VERB
    for suffix in _ADJECTIVE_SUFFIXES:
        if word.endswith(suffix) and len(word) >= len(suffix) + 2:
            return PosTag.ADJECTIVE
    return PosTag.NOUN


def tag_tokens(tokens: list[Token]) -> list[Optional[PosTag]]:
    """Tag a token sequence; non-word tokens get ``None``."""
    tags: list[Optional[PosTag]] = []
    prev_word: Optional[str] = None
    for tok in tokens:
        if tok.kind is not TokenKind.WORD:
            tags.append(None)
            continue
        tags.append(tag_word(tok.surface, prev_word))
        prev_word = tok.surface
    return tags
