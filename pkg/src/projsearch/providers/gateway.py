"""Federated retrieval: per-term fetches, session caching, clause algebra.

Positive clauses union their terms' result sets and intersect across
clauses; negative clauses subtract their term's set after every positive
clause has been applied, so exclusion order never matters.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Sequence

from projsearch.query.clauses import AtomicTerm, Clause, NormalizedQuery

from .base import (
    AllProvidersFailed,
    DocSet,
    AbstractDoc,
    ProviderError,
    merge_providers,
)

DEFAULT_FETCH_LIMIT = 100


@dataclass(frozen=True)
class FetchFailure:
    provider: str
    term: str
    error: str


@dataclass
class ExecuteResult:
    docs: DocSet
    partial: bool = False
    failures: tuple[FetchFailure, ...] = ()


def combine(acc: DocSet, clause_set: DocSet, negative: bool) -> DocSet:
    """Fold one clause into the running result: intersect, or subtract
    when the clause is an exclusion."""
    if negative:
        return acc.subtract(clause_set)
    return acc.intersect(clause_set)


class Gateway:
    """Runs normalized queries against a set of providers with a session
    cache keyed by (provider, term, limit)."""

    def __init__(self, providers: Sequence, default_limit: int = DEFAULT_FETCH_LIMIT):
        self._providers = {p.name: p for p in providers}
        self._order = [p.name for p in providers]
        self.default_limit = default_limit
        self._cache: dict[tuple[str, str, int], tuple[AbstractDoc, ...]] = {}
        self._lock = threading.Lock()

    @property
    def provider_names(self) -> list[str]:
        return list(self._order)

    def fetch_term(self, provider_name: str, atom: AtomicTerm, limit: int) -> DocSet:
        """Cached per-term fetch from one provider."""
        key = (provider_name, atom.text, limit)
        with self._lock:
            if key in self._cache:
                return DocSet(self._cache[key])
        provider = self._providers[provider_name]
        docs = tuple(provider.fetch_term(atom, limit))
        with self._lock:
            self._cache.setdefault(key, docs)
        return DocSet(docs)

    def _clause_set(
        self,
        terms,
        providers: Sequence[str],
        limit: int,
        failures: list[FetchFailure],
        successes: list[bool],
    ) -> DocSet:
        per_provider: list[DocSet] = []
        for name in providers:
            provider_docs = DocSet()
            for term in sorted(terms, key=lambda t: t.text):
                try:
                    provider_docs = provider_docs.union(self.fetch_term(name, term, limit))
                except ProviderError as exc:
                    failures.append(FetchFailure(name, term.text, type(exc).__name__))
                else:
                    successes.append(True)
            per_provider.append(provider_docs)
        return merge_providers(per_provider, provider_order=list(providers))

    def execute(
        self,
        nq: NormalizedQuery,
        providers: Sequence[str] | None = None,
        limit: int | None = None,
    ) -> ExecuteResult:
        """Evaluate the clause algebra over the providers' result sets."""
        providers = list(providers) if providers is not None else list(self._order)
        if not providers:
            raise ValueError("at least one provider is required")
        unknown = [p for p in providers if p not in self._providers]
        if unknown:
            raise ValueError(f"unknown providers: {unknown}")
        limit = limit if limit is not None else self.default_limit

        positives = [c for c in nq.clauses if not c.is_negative]
        negatives = [c for c in nq.clauses if c.is_negative]
        if not positives:
            raise ValueError("query needs at least one positive clause")

        failures: list[FetchFailure] = []
        successes: list[bool] = []
        acc: DocSet | None = None
        for clause in positives:
            clause_set = self._clause_set(clause.positives, providers, limit, failures, successes)
            acc = clause_set if acc is None else combine(acc, clause_set, negative=False)
        for clause in negatives:
            neg_set = self._clause_set(clause.negatives, providers, limit, failures, successes)
            acc = combine(acc, neg_set, negative=True)

        if failures and not successes:
            raise AllProvidersFailed(
                "; ".join(f"{f.provider}/{f.term}: {f.error}" for f in failures)
            )
        return ExecuteResult(docs=acc, partial=bool(failures), failures=tuple(failures))
