"""Feature extraction: six feature classes assembled by a registry."""

from .context import BundleContext
from .friends import CONTACT_GROUPS, contact_groups
from .networks import (
    NETWORK_KINDS,
    InteractionNetwork,
    build_networks,
    network_features,
)
from .registry import (
    CLASS_ORDER,
    LANGUAGE_DEPENDENT,
    REGISTRY_VERSION,
    FeatureClass,
    FeatureRegistry,
    FeatureVector,
    RegistryConfig,
)

__all__ = [
    "BundleContext",
    "CLASS_ORDER",
    "CONTACT_GROUPS",
    "FeatureClass",
    "FeatureRegistry",
    "FeatureVector",
    "InteractionNetwork",
    "LANGUAGE_DEPENDENT",
    "NETWORK_KINDS",
    "REGISTRY_VERSION",
    "RegistryConfig",
    "build_networks",
    "contact_groups",
    "network_features",
]
