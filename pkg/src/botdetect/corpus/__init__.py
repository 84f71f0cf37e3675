"""Account data model, file ingestion, and the synthetic corpus generator."""

from .io import (
    BUNDLE_FORMAT,
    TWEETS_FORMAT,
    IngestResult,
    format_timestamp,
    ingest_bundles,
    iter_bundles,
    load_bundles,
    parse_timestamp,
    read_edges,
    read_labels,
    write_bundles,
    write_edges,
    write_labels,
)
from .mixing import mix_datasets
from .synth import (
    REF_EPOCH,
    ArchetypeSpec,
    SyntheticConfig,
    default_archetypes,
    generate_synthetic_corpus,
)
from .types import (
    LABEL_BOT,
    LABEL_HUMAN,
    LABEL_UNDECIDED,
    MENTIONS_CAP,
    TIMELINE_CAP,
    AccountBundle,
    LabeledDataset,
    SocialEdges,
    TweetRecord,
    UserRecord,
)

__all__ = [
    "ArchetypeSpec",
    "AccountBundle",
    "BUNDLE_FORMAT",
    "IngestResult",
    "LABEL_BOT",
    "LABEL_HUMAN",
    "LABEL_UNDECIDED",
    "LabeledDataset",
    "MENTIONS_CAP",
    "REF_EPOCH",
    "SocialEdges",
    "SyntheticConfig",
    "TIMELINE_CAP",
    "TWEETS_FORMAT",
    "TweetRecord",
    "UserRecord",
    "default_archetypes",
    "format_timestamp",
    "generate_synthetic_corpus",
    "ingest_bundles",
    "iter_bundles",
    "load_bundles",
    "mix_datasets",
    "parse_timestamp",
    "read_edges",
    "read_labels",
    "write_bundles",
    "write_edges",
    "write_labels",
]
