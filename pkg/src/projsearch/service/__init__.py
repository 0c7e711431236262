"""HTTP service layer and evaluation metrics."""

from .app import build_service, create_app
from .engine import NoLabelsYet, SEARCH_MODES, SearchService
from .metrics import (
    InsufficientLabels,
    MetricsReport,
    build_metrics,
    normalize_precision,
    precision_at_k,
)

__all__ = [
    "InsufficientLabels",
    "MetricsReport",
    "NoLabelsYet",
    "SEARCH_MODES",
    "SearchService",
    "build_metrics",
    "build_service",
    "create_app",
    "normalize_precision",
    "precision_at_k",
]
