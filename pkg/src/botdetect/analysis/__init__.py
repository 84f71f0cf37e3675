"""Population characterization: neighbor profiles and behavioral clusters."""

from .clustering import (
    ClusterReport,
    cluster_summaries,
    kmeans,
    kmeans_cluster,
    silhouette,
)
from .profiles import (
    CONNECTIVITY_KINDS,
    FLOW_KINDS,
    PROFILE_BINS,
    ScoreIntervalProfile,
    connectivity_profiles,
    default_intervals,
    flow_profiles,
    profiles_to_rows,
    reciprocity,
)

__all__ = [
    "CONNECTIVITY_KINDS",
    "ClusterReport",
    "FLOW_KINDS",
    "PROFILE_BINS",
    "ScoreIntervalProfile",
    "cluster_summaries",
    "connectivity_profiles",
    "default_intervals",
    "flow_profiles",
    "kmeans",
    "kmeans_cluster",
    "profiles_to_rows",
    "reciprocity",
    "silhouette",
]
