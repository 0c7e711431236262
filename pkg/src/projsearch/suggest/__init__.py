"""Next-query suggestion from per-query relevance labels."""

from .engine import (
    DEFAULT_MAX_PER_SIDE,
    DIRECTION_ADD,
    DIRECTION_REMOVE,
    Suggestion,
    Z_THRESHOLD,
    apply_suggestion,
    joined_vector,
    suggest_terms,
)

__all__ = [
    "DEFAULT_MAX_PER_SIDE",
    "DIRECTION_ADD",
    "DIRECTION_REMOVE",
    "Suggestion",
    "Z_THRESHOLD",
    "apply_suggestion",
    "joined_vector",
    "suggest_terms",
]
