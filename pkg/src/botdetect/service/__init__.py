"""Scoring and annotation-workflow HTTP service with file-backed state."""

from .app import create_app
from .state import (
    ApiError,
    ServiceConfig,
    ServiceState,
    build_pools,
    score_decile,
)

__all__ = [
    "ApiError",
    "ServiceConfig",
    "ServiceState",
    "build_pools",
    "create_app",
    "score_decile",
]
