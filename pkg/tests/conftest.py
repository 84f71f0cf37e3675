import numpy as np
import pytest

from botdetect.corpus import SyntheticConfig, generate_synthetic_corpus
from botdetect.evaluation import labels_to_binary
from botdetect.features import FeatureRegistry


@pytest.fixture(scope="session")
def small_corpus():
    """36-account corpus shared by feature, forest, and eval tests."""
    return generate_synthetic_corpus(
        SyntheticConfig(humans=18, simple_bots=12, sophisticated_bots=6),
        seed=101,
    )


@pytest.fixture(scope="session")
def registry():
    return FeatureRegistry()


@pytest.fixture(scope="session")
def small_matrix(small_corpus, registry):
    bundles, labels, _ = small_corpus
    X = registry.extract_matrix(bundles)
    return X, labels_to_binary(labels), labels


@pytest.fixture()
def rng():
    return np.random.Generator(np.random.PCG64(12345))
