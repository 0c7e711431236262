"""Document and provider data types shared across the retrieval layer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from projsearch.text import tokenize

DocKey = tuple[str, str]

PROVIDER_ORDER = ("arxiv", "pubmed", "local")


class ProviderError(RuntimeError):
    """Base class for per-provider retrieval failures."""

    def __init__(self, provider: str, message: str):
        super().__init__(f"{provider}: {message}")
        self.provider = provider


class ProviderUnavailable(ProviderError):
    pass


class ProviderRejected(ProviderError):
    pass


class RateLimited(ProviderError):
    def __init__(self, provider: str, message: str, retry_after: float = 0.0):
        super().__init__(provider, message)
        self.retry_after = retry_after


class AllProvidersFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class AbstractDoc:
    """One retrievable paper; `alt_ids` records merged duplicate sources."""

    doc_id: str
    provider: str
    title: str
    abstract_text: str
    fetched_at: float = 0.0
    alt_ids: tuple[DocKey, ...] = ()

    @property
    def key(self) -> DocKey:
        return (self.provider, self.doc_id)

    def key_set(self) -> frozenset[DocKey]:
        return frozenset((self.key,) + self.alt_ids)


@dataclass(frozen=True)
class ProviderConfig:
    base_url: str
    max_results_per_term: int = 100
    request_timeout: float = 10.0
    min_request_interval: float = 0.0

    def __post_init__(self):
        if self.max_results_per_term < 1:
            raise ValueError("max_results_per_term must be at least 1")
        if self.min_request_interval < 0:
            raise ValueError("min_request_interval must be non-negative")


class DocSet:
    """Documents keyed by (provider, doc_id); iteration is key-sorted."""

    def __init__(self, docs: Iterable[AbstractDoc] = ()):
        self._docs: dict[DocKey, AbstractDoc] = {}
        for doc in docs:
            self.add(doc)

    def add(self, doc: AbstractDoc) -> None:
        self._docs.setdefault(doc.key, doc)

    def __len__(self) -> int:
        return len(self._docs)

    def __iter__(self) -> Iterator[AbstractDoc]:
        return iter(sorted(self._docs.values(), key=lambda d: d.key))

    def __contains__(self, item) -> bool:
        key = item.key if isinstance(item, AbstractDoc) else tuple(item)
        return key in self._docs

    def __eq__(self, other):
        if not isinstance(other, DocSet):
            return NotImplemented
        return self._docs == other._docs

    def keys(self) -> set[DocKey]:
        return set(self._docs)

    def get(self, key: DocKey) -> AbstractDoc | None:
        return self._docs.get(key)

    def all_ids(self) -> set[DocKey]:
        ids: set[DocKey] = set()
        for doc in self._docs.values():
            ids |= doc.key_set()
        return ids

    def intersect(self, other: "DocSet") -> "DocSet":
        other_ids = other.all_ids()
        return DocSet(d for d in self if d.key_set() & other_ids)

    def subtract(self, other: "DocSet") -> "DocSet":
        other_ids = other.all_ids()
        return DocSet(d for d in self if not (d.key_set() & other_ids))

    def union(self, other: "DocSet") -> "DocSet":
        out = DocSet(self)
        for doc in other:
            out.add(doc)
        return out


def normalized_title(title: str) -> str:
    """Lowercase alphanumeric-only merge key for near-duplicate titles."""
    return "".join(tokenize(title))


def merge_providers(
    sets: Sequence[DocSet], provider_order: Sequence[str] = PROVIDER_ORDER
) -> DocSet:
    """Union of `sets` with cross-provider near-duplicate titles merged.

    The surviving doc is picked by provider order then doc_id; every other
    source key lands in its `alt_ids`.  Same-provider title collisions are
    kept apart (distinct records), as is anything with an empty title.
    """
    rank = {name: i for i, name in enumerate(provider_order)}
    merged = DocSet()
    for docset in sets:
        for doc in docset:
            merged.add(doc)

    groups: dict[str, list[AbstractDoc]] = {}
    for doc in merged:
        key = normalized_title(doc.title)
        if key:
            groups.setdefault(key, []).append(doc)

    out = DocSet()
    absorbed: set[DocKey] = set()
    for docs in groups.values():
        providers = {d.provider for d in docs}
        if len(docs) < 2 or len(providers) < 2:
            continue
        docs.sort(key=lambda d: (rank.get(d.provider, len(rank)), d.doc_id))
        winner, losers = docs[0], docs[1:]
        extra = set(winner.alt_ids)
        for loser in losers:
            extra |= loser.key_set()
            absorbed.add(loser.key)
        merged_doc = AbstractDoc(
            doc_id=winner.doc_id,
            provider=winner.provider,
            title=winner.title,
            abstract_text=winner.abstract_text or max(
                (l.abstract_text for l in losers), key=len, default=""
            ),
            fetched_at=winner.fetched_at,
            alt_ids=tuple(sorted(extra)),
        )
        out.add(merged_doc)

    for doc in merged:
        if doc.key not in absorbed and doc.key not in out.keys():
            out.add(doc)
    return out
