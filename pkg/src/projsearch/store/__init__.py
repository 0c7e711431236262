"""Durable store for users, projects, queries, labels, and action logs."""

from .store import (
    Conflict,
    HISTORY_MODES,
    LABELS,
    MODE_BASE,
    MODE_LIFETIME,
    MODE_PROJECT,
    MODE_RANDOM,
    NotFound,
    Project,
    ProjectStore,
    QueryRecord,
    User,
    ValidationError,
    random_sample_size,
)

__all__ = [
    "Conflict",
    "HISTORY_MODES",
    "LABELS",
    "MODE_BASE",
    "MODE_LIFETIME",
    "MODE_PROJECT",
    "MODE_RANDOM",
    "NotFound",
    "Project",
    "ProjectStore",
    "QueryRecord",
    "User",
    "ValidationError",
    "random_sample_size",
]
