"""Retrieval layer: provider adapters, document sets, federation gateway."""

from .arxiv import ArxivProvider
from .base import (
    AbstractDoc,
    AllProvidersFailed,
    DocKey,
    DocSet,
    PROVIDER_ORDER,
    ProviderConfig,
    ProviderError,
    ProviderRejected,
    ProviderUnavailable,
    RateLimited,
    merge_providers,
    normalized_title,
)
from .gateway import DEFAULT_FETCH_LIMIT, ExecuteResult, FetchFailure, Gateway, combine
from .http import HttpFetcher
from .local import LocalProvider
from .pubmed import PubmedProvider

__all__ = [
    "AbstractDoc",
    "AllProvidersFailed",
    "ArxivProvider",
    "DEFAULT_FETCH_LIMIT",
    "DocKey",
    "DocSet",
    "ExecuteResult",
    "FetchFailure",
    "Gateway",
    "HttpFetcher",
    "LocalProvider",
    "PROVIDER_ORDER",
    "ProviderConfig",
    "ProviderError",
    "ProviderRejected",
    "ProviderUnavailable",
    "PubmedProvider",
    "RateLimited",
    "combine",
    "merge_providers",
    "normalized_title",
]
