"""From-scratch random forest with swappable split kernels."""

from .backend import active_backend, compiled_available, get_backend
from .model import (
    FORMAT_VERSION,
    ForestModel,
    ImportanceReport,
    TrainParams,
    Tree,
    gini,
    importances,
    load_model,
    model_from_dict,
    model_to_dict,
    model_to_json,
    save_model,
    score,
    score_matrix,
    train,
)

__all__ = [
    "FORMAT_VERSION",
    "ForestModel",
    "ImportanceReport",
    "TrainParams",
    "Tree",
    "active_backend",
    "compiled_available",
    "get_backend",
    "gini",
    "importances",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "model_to_json",
    "save_model",
    "score",
    "score_matrix",
    "train",
]
