"""Parameterized synthetic corpus generator.

Produces account bundles for three behavioral archetypes (human,
simple-bot, sophisticated-bot) that differ in timing regularity, retweet
fraction, profile defaults, vocabulary breadth, lexicon bias, and follow
reciprocity.  Generation is sequential and driven by a single PCG64
stream, so a fixed seed yields byte-identical output regardless of how
many worker threads the caller uses elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime, timedelta, timezone

import numpy as np

from ..errors import ConfigError
from .types import (
    LABEL_BOT,
    LABEL_HUMAN,
    MENTIONS_CAP,
    TIMELINE_CAP,
    AccountBundle,
    SocialEdges,
    TweetRecord,
    UserRecord,
)

# Fixed reference collection time; everything is generated relative to it.
REF_EPOCH = datetime(2016, 3, 1, tzinfo=timezone.utc)

STOPWORDS = (
    "the a an and or but if then of in on at to for with from by about as "
    "is are was be been it this that these those i you he she we they my "
    "your our me him them so not just really very now today when what all "
    "some more one two out up down over after before"
).split()

POSITIVE_WORDS = (
    "love happy great awesome amazing win free good nice fun best friend "
    "thanks cool party hope smile laugh joy wonderful excellent beautiful "
    "success family music gift peace welcome safe strong"
).split()

NEGATIVE_WORDS = (
    "bad sad hate angry terrible awful worst fail problem wrong sick pain "
    "fear lose broken ugly stupid crisis danger spam scam fake liar alone "
    "tired poor dark storm"
).split()

NEUTRAL_WORDS = (
    "time day work news people thing street chair paper window food home "
    "game coffee morning city road book movie team match photo weather "
    "train station office school market report update story video live "
    "show watch read play make take going looking run meet talk check "
    "start stop share post write question answer idea plan week month "
    "night door table garden river phone screen letter coin glass bridge "
    "corner garden light sound voice field stone cloud river track page"
).split()

SPAM_WORDS = (
    "free win click buy offer deal now discount sale cash prize bonus "
    "earn money follow gain followers link check visit best cheap"
).split()

HUMAN_HASHTAGS = (
    "monday coffee football music news photo travel friends weekend "
    "birthday dinner sunset"
).split()

SIMPLE_BOT_HASHTAGS = "win free followback deal".split()

SOPHISTICATED_BOT_HASHTAGS = "news offer trending update live market".split()

HUMAN_SOURCES = ("Twitter for iPhone", "Twitter for Android", "Twitter Web Client")
SIMPLE_BOT_SOURCES = ("autopost 2.1", "feedpipe")
SOPHISTICATED_BOT_SOURCES = ("SocialSuite", "Twitter Web Client")

FIRST_NAMES = (
    "alex sam jordan taylor casey riley morgan jamie avery quinn dana "
    "robin drew kelly shawn pat lee kim joan marc elena nina omar priya "
    "hugo ivan lena maya noel rosa"
).split()


@dataclass(frozen=True)
class ArchetypeSpec:
    """Behavioral parameters for one account archetype."""

    name: str
    label: str
    account_age_days: tuple[float, float]
    friends_log_mean: float
    friends_log_sigma: float
    followers_log_mean: float
    followers_log_sigma: float
    favourites_log_mean: float
    default_profile_rate: float
    default_image_rate: float
    description_rate: float
    tweets_mean: float
    activity_days: float
    gap_log_sigma: float
    retweet_fraction: float
    reply_fraction: float
    mention_prob: float
    hashtag_mean: float
    url_prob: float
    polar_word_prob: float
    positive_bias: float
    word_pool_size: int
    spam_pool: bool
    hashtag_pool: tuple[str, ...]
    sources: tuple[str, ...]
    langs: tuple[str, ...]
    utc_offsets: tuple[int, ...]
    assortativity: float
    reciprocity: float
    follow_edges_mean: float
    mentions_received_mean: float
    statuses_multiplier: tuple[float, float]


def default_archetypes() -> dict[str, ArchetypeSpec]:
    human = ArchetypeSpec(
        name="human",
        label=LABEL_HUMAN,
        account_age_days=(365.0, 2900.0),
        friends_log_mean=5.5,
        friends_log_sigma=0.8,
        followers_log_mean=5.5,
        followers_log_sigma=1.0,
        favourites_log_mean=5.0,
        default_profile_rate=0.05,
        default_image_rate=0.02,
        description_rate=0.9,
        tweets_mean=80.0,
        activity_days=30.0,
        gap_log_sigma=1.2,
        retweet_fraction=0.15,
        reply_fraction=0.2,
        mention_prob=0.4,
        hashtag_mean=0.3,
        url_prob=0.15,
        polar_word_prob=0.25,
        positive_bias=0.6,
        word_pool_size=120,
        spam_pool=False,
        hashtag_pool=tuple(HUMAN_HASHTAGS),
        sources=HUMAN_SOURCES,
        langs=("en", "en", "en", "es", "fr"),
        utc_offsets=(-28800, -18000, 0, 3600, 7200, 19800),
        assortativity=0.7,
        reciprocity=0.6,
        follow_edges_mean=20.0,
        mentions_received_mean=25.0,
        statuses_multiplier=(3.0, 30.0),
    )
    simple_bot = ArchetypeSpec(
        name="simple-bot",
        label=LABEL_BOT,
        account_age_days=(5.0, 180.0),
        friends_log_mean=6.5,
        friends_log_sigma=0.5,
        followers_log_mean=3.0,
        followers_log_sigma=0.8,
        favourites_log_mean=0.5,
        default_profile_rate=0.7,
        default_image_rate=0.4,
        description_rate=0.25,
        tweets_mean=90.0,
        activity_days=30.0,
        gap_log_sigma=0.05,
        retweet_fraction=0.65,
        reply_fraction=0.02,
        mention_prob=0.15,
        hashtag_mean=1.8,
        url_prob=0.7,
        polar_word_prob=0.5,
        positive_bias=0.9,
        word_pool_size=25,
        spam_pool=True,
        hashtag_pool=tuple(SIMPLE_BOT_HASHTAGS),
        sources=SIMPLE_BOT_SOURCES,
        langs=("en",),
        utc_offsets=(0,),
        assortativity=0.9,
        reciprocity=0.05,
        follow_edges_mean=25.0,
        mentions_received_mean=4.0,
        statuses_multiplier=(10.0, 60.0),
    )
    sophisticated_bot = ArchetypeSpec(
        name="sophisticated-bot",
        label=LABEL_BOT,
        account_age_days=(30.0, 500.0),
        friends_log_mean=5.8,
        friends_log_sigma=0.6,
        followers_log_mean=4.5,
        followers_log_sigma=0.8,
        favourites_log_mean=3.0,
        default_profile_rate=0.3,
        default_image_rate=0.1,
        description_rate=0.6,
        tweets_mean=85.0,
        activity_days=30.0,
        gap_log_sigma=0.45,
        retweet_fraction=0.4,
        reply_fraction=0.1,
        mention_prob=0.3,
        hashtag_mean=0.9,
        url_prob=0.4,
        polar_word_prob=0.35,
        positive_bias=0.75,
        word_pool_size=60,
        spam_pool=False,
        hashtag_pool=tuple(SOPHISTICATED_BOT_HASHTAGS),
        sources=SOPHISTICATED_BOT_SOURCES,
        langs=("en", "en", "es"),
        utc_offsets=(0, 3600),
        assortativity=0.75,
        reciprocity=0.25,
        follow_edges_mean=18.0,
        mentions_received_mean=12.0,
        statuses_multiplier=(5.0, 30.0),
    )
    return {
        "human": human,
        "simple-bot": simple_bot,
        "sophisticated-bot": sophisticated_bot,
    }


@dataclass(frozen=True)
class SyntheticConfig:
    humans: int = 0
    simple_bots: int = 0
    sophisticated_bots: int = 0
    archetypes: dict[str, ArchetypeSpec] = field(default_factory=default_archetypes)

    def counts(self) -> list[tuple[str, int]]:
        return [
            ("human", self.humans),
            ("simple-bot", self.simple_bots),
            ("sophisticated-bot", self.sophisticated_bots),
        ]


def _word_pool(spec: ArchetypeSpec) -> list[str]:
    base = SPAM_WORDS + NEUTRAL_WORDS if spec.spam_pool else NEUTRAL_WORDS + STOPWORDS
    return base[: max(spec.word_pool_size, 5)]


class _Account:
    __slots__ = ("user", "spec", "index", "end_time", "start_time", "n_tweets")

    def __init__(self, user, spec, index, end_time, start_time):
        self.user = user
        self.spec = spec
        self.index = index
        self.end_time = end_time
        self.start_time = start_time
        self.n_tweets = 0


def _make_text(
    rng: np.random.Generator,
    spec: ArchetypeSpec,
    pool: list[str],
    mention_handle: str | None,
    hashtags: tuple[str, ...],
    with_url: bool,
) -> str:
    n_words = 3 + int(rng.poisson(5.0))
    words = []
    for _ in range(n_words):
        if rng.random() < spec.polar_word_prob:
            source = POSITIVE_WORDS if rng.random() < spec.positive_bias else NEGATIVE_WORDS
            words.append(source[int(rng.integers(len(source)))])
        else:
            words.append(pool[int(rng.integers(len(pool)))])
    parts = []
    if mention_handle is not None:
        parts.append("@" + mention_handle)
    parts.extend(words)
    parts.extend("#" + tag for tag in hashtags)
    if with_url:
        suffix = "".join(
            "abcdefghijkmnpqrstuvwxyz0123456789"[int(rng.integers(34))] for _ in range(8)
        )
        parts.append("https://t.co/" + suffix)
    return " ".join(parts)


def _pick_other(
    rng: np.random.Generator,
    accounts: list[_Account],
    by_type: dict[str, list[int]],
    me: _Account,
) -> _Account:
    """Pick another account, preferring the same archetype."""
    if rng.random() < me.spec.assortativity:
        candidates = by_type[me.spec.name]
        if len(candidates) > 1:
            while True:
                idx = candidates[int(rng.integers(len(candidates)))]
                if idx != me.index:
                    return accounts[idx]
    while True:
        idx = int(rng.integers(len(accounts)))
        if idx != me.index:
            return accounts[idx]


def _make_user(
    rng: np.random.Generator, spec: ArchetypeSpec, index: int
) -> UserRecord:
    age_days = float(rng.uniform(*spec.account_age_days))
    created = REF_EPOCH - timedelta(days=age_days)
    created = created.replace(microsecond=0)
    friends = int(rng.lognormal(spec.friends_log_mean, spec.friends_log_sigma))
    followers = int(rng.lognormal(spec.followers_log_mean, spec.followers_log_sigma))
    favourites = int(rng.lognormal(spec.favourites_log_mean, 1.0))
    if spec.label == LABEL_HUMAN:
        first = FIRST_NAMES[int(rng.integers(len(FIRST_NAMES)))]
        screen = "%s_%d" % (first, int(rng.integers(10, 9999)))
        display = first.capitalize()
    else:
        stem = FIRST_NAMES[int(rng.integers(len(FIRST_NAMES)))]
        screen = "%s%08d" % (stem, int(rng.integers(10**7, 10**8)))
        display = stem
    has_description = rng.random() < spec.description_rate
    description = ""
    if has_description:
        pool = _word_pool(spec)
        description = " ".join(
            pool[int(rng.integers(len(pool)))] for _ in range(4 + int(rng.integers(6)))
        )
    return UserRecord(
        user_id="u%05d" % index,
        screen_name=screen,
        display_name=display,
        description=description,
        created_at=created,
        utc_offset_seconds=int(spec.utc_offsets[int(rng.integers(len(spec.utc_offsets)))]),
        friends_count=friends,
        followers_count=followers,
        favourites_count=favourites,
        statuses_count=0,  # set once the timeline length is known
        default_profile=bool(rng.random() < spec.default_profile_rate),
        default_profile_image=bool(rng.random() < spec.default_image_rate),
        lang=spec.langs[int(rng.integers(len(spec.langs)))],
    )


def _timeline_times(
    rng: np.random.Generator, spec: ArchetypeSpec, n: int, end_time: datetime
) -> list[datetime]:
    if n == 0:
        return []
    base_gap = spec.activity_days * 86400.0 / max(n, 1)
    sigma = max(spec.gap_log_sigma, 1e-9)
    gaps = rng.lognormal(np.log(base_gap) - sigma * sigma / 2.0, sigma, size=n)
    gaps = np.maximum(gaps, 1.0)
    offsets = np.cumsum(gaps)
    times = [end_time - timedelta(seconds=int(round(off))) for off in offsets]
    times.reverse()
    return times


def generate_synthetic_corpus(
    config: SyntheticConfig, seed: int
) -> tuple[list[AccountBundle], list[str], SocialEdges]:
    """Generate bundles, ground-truth labels, and follow edges.

    Deterministic for a fixed seed; bundles come out grouped by archetype
    in config order.
    """
    total = config.humans + config.simple_bots + config.sophisticated_bots
    if total <= 0:
        raise ConfigError("synthetic corpus needs at least one account")
    for name, count in config.counts():
        if count < 0:
            raise ConfigError("negative count for archetype %s" % name)
        if count > 0 and name not in config.archetypes:
            raise ConfigError("no archetype spec named %s" % name)

    rng = np.random.Generator(np.random.PCG64(seed))

    # Roster first so tweets can reference other accounts.
    accounts: list[_Account] = []
    by_type: dict[str, list[int]] = {}
    index = 0
    for name, count in config.counts():
        for _ in range(count):
            spec = config.archetypes[name]
            user = _make_user(rng, spec, index)
            end_time = (REF_EPOCH - timedelta(seconds=int(rng.integers(0, 3 * 86400)))).replace(
                microsecond=0
            )
            start_time = end_time - timedelta(days=spec.activity_days)
            accounts.append(_Account(user, spec, index, end_time, start_time))
            by_type.setdefault(name, []).append(index)
            index += 1

    pools = {name: _word_pool(spec) for name, spec in config.archetypes.items()}
    tweet_serial = 0
    bundles: list[AccountBundle] = []
    labels: list[str] = []
    edges = SocialEdges()

    def snapshot(account: _Account) -> UserRecord:
        return account.user

    # Fix timeline sizes up front so profile statuses_count agrees with the
    # timeline actually generated.
    for account in accounts:
        spec = account.spec
        account.n_tweets = min(max(int(rng.poisson(spec.tweets_mean)), 5), TIMELINE_CAP)
        statuses = int(account.n_tweets * rng.uniform(*spec.statuses_multiplier))
        account.user = replace(
            account.user, statuses_count=max(statuses, account.n_tweets)
        )

    for account in accounts:
        spec = account.spec
        pool = pools[spec.name]
        timeline: list[TweetRecord] = []
        times = _timeline_times(rng, spec, account.n_tweets, account.end_time)
        for when in times:
            tweet_serial += 1
            is_retweet = rng.random() < spec.retweet_fraction
            n_tags = int(rng.poisson(spec.hashtag_mean))
            tags = tuple(
                spec.hashtag_pool[int(rng.integers(len(spec.hashtag_pool)))]
                for _ in range(min(n_tags, 4))
            )
            if is_retweet:
                target = _pick_other(rng, accounts, by_type, account)
                text = "RT @%s: %s" % (
                    target.user.screen_name,
                    _make_text(rng, target.spec, pools[target.spec.name], None, tags, rng.random() < spec.url_prob),
                )
                tweet = TweetRecord(
                    tweet_id="t%07d" % tweet_serial,
                    author=account.user,
                    text=text,
                    created_at=when,
                    mentions=(target.user.user_id,),
                    hashtags=tags,
                    is_retweet=True,
                    retweeted_author_id=target.user.user_id,
                    source_app=spec.sources[int(rng.integers(len(spec.sources)))],
                    lang=account.user.lang,
                )
            else:
                mention_target = None
                reply_to = None
                if rng.random() < spec.mention_prob:
                    mention_target = _pick_other(rng, accounts, by_type, account)
                if mention_target is not None and rng.random() < spec.reply_fraction:
                    reply_to = mention_target.user.user_id
                text = _make_text(
                    rng,
                    spec,
                    pool,
                    mention_target.user.screen_name if mention_target else None,
                    tags,
                    rng.random() < spec.url_prob,
                )
                tweet = TweetRecord(
                    tweet_id="t%07d" % tweet_serial,
                    author=account.user,
                    text=text,
                    created_at=when,
                    mentions=(mention_target.user.user_id,) if mention_target else (),
                    hashtags=tags,
                    is_retweet=False,
                    in_reply_to_user_id=reply_to,
                    source_app=spec.sources[int(rng.integers(len(spec.sources)))],
                    lang=account.user.lang,
                )
            timeline.append(tweet)

        # Tweets by others that mention or retweet this account.
        mentions_in: list[TweetRecord] = []
        if len(accounts) > 1:
            n_mentions = min(int(rng.poisson(spec.mentions_received_mean)), MENTIONS_CAP)
            span = (account.end_time - account.start_time).total_seconds()
            for _ in range(n_mentions):
                tweet_serial += 1
                author = _pick_other(rng, accounts, by_type, account)
                when = account.start_time + timedelta(
                    seconds=int(rng.uniform(0.0, span))
                )
                as_retweet = timeline and rng.random() < author.spec.retweet_fraction
                if as_retweet:
                    quoted = timeline[int(rng.integers(len(timeline)))]
                    text = "RT @%s: %s" % (account.user.screen_name, quoted.text)
                    tweet = TweetRecord(
                        tweet_id="t%07d" % tweet_serial,
                        author=snapshot(author),
                        text=text,
                        created_at=when,
                        mentions=(account.user.user_id,),
                        hashtags=quoted.hashtags,
                        is_retweet=True,
                        retweeted_author_id=account.user.user_id,
                        source_app=author.spec.sources[
                            int(rng.integers(len(author.spec.sources)))
                        ],
                        lang=author.user.lang,
                    )
                else:
                    text = _make_text(
                        rng,
                        author.spec,
                        pools[author.spec.name],
                        account.user.screen_name,
                        (),
                        rng.random() < author.spec.url_prob,
                    )
                    tweet = TweetRecord(
                        tweet_id="t%07d" % tweet_serial,
                        author=snapshot(author),
                        text=text,
                        created_at=when,
                        mentions=(account.user.user_id,),
                        hashtags=(),
                        is_retweet=False,
                        source_app=author.spec.sources[
                            int(rng.integers(len(author.spec.sources)))
                        ],
                        lang=author.user.lang,
                    )
                mentions_in.append(tweet)

        mentions_in.sort(key=lambda t: (t.created_at, t.tweet_id))
        bundle = AccountBundle(
            user=account.user,
            timeline=tuple(timeline),
            mentions_of_user=tuple(mentions_in),
        )
        bundle.validate()
        bundles.append(bundle)
        labels.append(spec.label)

        # Follow edges; reciprocated follows become follower edges.
        if len(accounts) > 1:
            n_follows = min(max(int(rng.poisson(spec.follow_edges_mean)), 1), 40)
            chosen: set[str] = set()
            for _ in range(n_follows):
                target = _pick_other(rng, accounts, by_type, account)
                if target.user.user_id in chosen:
                    continue
                chosen.add(target.user.user_id)
                edges.friend_edges.append((account.user.user_id, target.user.user_id))
                if rng.random() < spec.reciprocity:
                    edges.follower_edges.append(
                        (account.user.user_id, target.user.user_id)
                    )

    edges.validate()
    return bundles, labels, edges
