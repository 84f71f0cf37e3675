"""Feature registry: fixed-order named features across six classes.

The registry publishes its own authoritative feature count and a
fingerprint over the ordered names plus configuration; models refuse
vectors whose fingerprint does not match the one they were trained
with.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from ..corpus.types import AccountBundle
from ..errors import DataError
from ..nlp import NlpPipeline
from .content import content_names, extract_content
from .context import BundleContext
from .friends import extract_friends, friends_names
from .networks import extract_networks, network_names
from .sentiment_features import extract_sentiment, sentiment_names
from .temporal import extract_temporal, temporal_names
from .user_meta import extract_user_meta, user_meta_names

REGISTRY_VERSION = "1"


class FeatureClass(str, Enum):
    USER_META = "user_meta"
    FRIENDS = "friends"
    NETWORK = "network"
    TEMPORAL = "temporal"
    CONTENT = "content"
    SENTIMENT = "sentiment"


CLASS_ORDER: tuple[FeatureClass, ...] = (
    FeatureClass.USER_META,
    FeatureClass.FRIENDS,
    FeatureClass.NETWORK,
    FeatureClass.TEMPORAL,
    FeatureClass.CONTENT,
    FeatureClass.SENTIMENT,
)

# Content and sentiment read the tweet text; dropping them yields a
# language-independent classifier.
LANGUAGE_DEPENDENT = (FeatureClass.CONTENT, FeatureClass.SENTIMENT)


@dataclass(frozen=True)
class RegistryConfig:
    language_free: bool = False
    include_retweet_text: bool = False


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    registry_fingerprint: str

    def __post_init__(self):
        if not np.all(np.isfinite(self.values)):
            raise DataError("feature vector contains non-finite values")


class FeatureRegistry:
    def __init__(self, config: Optional[RegistryConfig] = None,
                 nlp: Optional[NlpPipeline] = None):
        self.config = config if config is not None else RegistryConfig()
        self.nlp = nlp if nlp is not None else NlpPipeline()

        name_builders = {
            FeatureClass.USER_META: user_meta_names,
            FeatureClass.FRIENDS: friends_names,
            FeatureClass.NETWORK: network_names,
            FeatureClass.TEMPORAL: temporal_names,
            FeatureClass.CONTENT: content_names,
            FeatureClass.SENTIMENT: sentiment_names,
        }
        self.classes: tuple[FeatureClass, ...] = tuple(
            c
            for c in CLASS_ORDER
            if not (self.config.language_free and c in LANGUAGE_DEPENDENT)
        )
        self._entries: list[tuple[str, FeatureClass]] = []
        self._slices: dict[FeatureClass, slice] = {}
        for cls in self.classes:
            start = len(self._entries)
            for name in name_builders[cls]():
                self._entries.append(("%s.%s" % (cls.value, name), cls))
            self._slices[cls] = slice(start, len(self._entries))

        names = self.names()
        if len(set(names)) != len(names):
            raise DataError("duplicate feature names in registry")

        digest = hashlib.sha256()
        digest.update(("registry-v%s\n" % REGISTRY_VERSION).encode())
        digest.update(
            (
                "language_free=%d include_retweet_text=%d\n"
                % (self.config.language_free, self.config.include_retweet_text)
            ).encode()
        )
        for name, cls in self._entries:
            digest.update(("%s:%s\n" % (cls.value, name)).encode())
        self.fingerprint = digest.hexdigest()

    def __len__(self) -> int:
        return len(self._entries)

    def names(self) -> list[str]:
        return [name for name, _ in self._entries]

    def feature_classes(self) -> list[FeatureClass]:
        return [cls for _, cls in self._entries]

    def class_slice(self, cls: FeatureClass) -> slice:
        if cls not in self._slices:
            raise DataError("class %s not present in this registry" % cls.value)
        return self._slices[cls]

    def extract(self, bundle: AccountBundle) -> FeatureVector:
        ctx = BundleContext(
            bundle, self.nlp, include_retweet_text=self.config.include_retweet_text
        )
        extractors = {
            FeatureClass.USER_META: lambda: extract_user_meta(ctx),
            FeatureClass.FRIENDS: lambda: extract_friends(ctx),
            FeatureClass.NETWORK: lambda: extract_networks(bundle),
            FeatureClass.TEMPORAL: lambda: extract_temporal(ctx),
            FeatureClass.CONTENT: lambda: extract_content(ctx),
            FeatureClass.SENTIMENT: lambda: extract_sentiment(ctx),
        }
        values: list[float] = []
        for cls in self.classes:
            part = extractors[cls]()
            expected = self._slices[cls]
            if len(part) != expected.stop - expected.start:
                raise DataError(
                    "extractor for %s produced %d values, registry has %d"
                    % (cls.value, len(part), expected.stop - expected.start)
                )
            values.extend(part)
        return FeatureVector(
            values=np.asarray(values, dtype=np.float64),
            registry_fingerprint=self.fingerprint,
        )

    def extract_matrix(self, bundles: list[AccountBundle]) -> np.ndarray:
        """Feature matrix, one row per bundle in input order."""
        if not bundles:
            return np.empty((0, len(self)), dtype=np.float64)
        return np.vstack([self.extract(b).values for b in bundles])

    def to_manifest(self) -> dict:
        return {
            "version": REGISTRY_VERSION,
            "config": {
                "language_free": self.config.language_free,
                "include_retweet_text": self.config.include_retweet_text,
            },
            "count": len(self),
            "fingerprint": self.fingerprint,
            "features": [
                {"name": name, "class": cls.value} for name, cls in self._entries
            ],
        }
