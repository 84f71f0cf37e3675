"""Social-bot detection toolkit.

Feature extraction over account activity bundles, a from-scratch random
forest classifier, evaluation and population-analysis tools, and an
annotation service for building labeled datasets.
"""

__version__ = "0.1.0"
