"""History-weighted document scoring, outlier filtering, and re-ranking.

Each candidate document is scored by summing, over the project's past
queries, the query-to-query similarity times the mean cosine similarity
to that query's relevant documents.  Scores far below the mean are then
dropped, unless doing so would discard too much of the result list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from projsearch.providers.base import AbstractDoc

from .similarity import cosine_sim, query_sim, query_tokens
from .textproc import TermVector, build_term_vector

DEFAULT_FILTER_SD = 2.0
DEFAULT_MIN_RETENTION = 0.6

LABEL_RELEVANT = "relevant"
LABEL_IRRELEVANT = "irrelevant"


class UnknownDocLabel(ValueError):
    pass


@dataclass(frozen=True)
class QueryProfile:
    """What scoring needs to know about a query: its terms and whether it
    excludes anything."""

    atom_texts: tuple[str, ...]
    has_negation: bool = False

    def __post_init__(self):
        object.__setattr__(self, "_tokens", tuple(query_tokens(self.atom_texts)))

    @property
    def tokens(self) -> tuple[str, ...]:
        return self._tokens


@dataclass(frozen=True)
class HistoryEntry:
    """One past query with the term vectors of its labeled results."""

    profile: QueryProfile
    relevant_docs: tuple[TermVector, ...] = ()
    irrelevant_docs: tuple[TermVector, ...] = ()
    query_text: str = ""


@dataclass(frozen=True)
class ScoredDoc:
    doc: AbstractDoc
    score: float
    rank: int


@lru_cache(maxsize=8192)
def doc_vector(doc: AbstractDoc) -> TermVector:
    return build_term_vector(f"{doc.title} {doc.abstract_text}")


def query_profile(nq) -> QueryProfile:
    """Profile of a normalized query: atom texts in clause order (positives
    sorted within a clause), plus whether the query excludes anything."""
    texts: list[str] = []
    for clause in nq.clauses:
        texts.extend(sorted(t.text for t in clause.positives))
        texts.extend(sorted(t.text for t in clause.negatives))
    return QueryProfile(atom_texts=tuple(texts), has_negation=nq.has_negation)


def personalization_score(
    doc_vec: TermVector,
    history: Sequence[HistoryEntry],
    current: QueryProfile,
) -> float:
    """Sum over history entries of query similarity times mean cosine to
    that entry's relevant documents; entries without relevant documents
    contribute nothing."""
    total = 0.0
    for entry in history:
        if not entry.relevant_docs:
            continue
        weight = query_sim(
            current.tokens,
            entry.profile.tokens,
            current.has_negation,
            entry.profile.has_negation,
        )
        mean_cos = sum(cosine_sim(doc_vec, rv) for rv in entry.relevant_docs) / len(
            entry.relevant_docs
        )
        total += weight * mean_cos
    return total


def apply_deviation_filter(
    scores: Sequence[float],
    sd: float = DEFAULT_FILTER_SD,
    min_retention: float = DEFAULT_MIN_RETENTION,
) -> list[bool]:
    """Keep-mask dropping scores below mean - sd*sigma (population sigma).

    The mask is all-True when the list has fewer than two entries (sigma
    is undefined) or when the cut would retain less than `min_retention`
    of the list.
    """
    n = len(scores)
    if n <= 1:
        return [True] * n
    mean = sum(scores) / n
    sigma = math.sqrt(sum((s - mean) ** 2 for s in scores) / n)
    threshold = mean - sd * sigma
    keep = [s >= threshold for s in scores]
    if sum(keep) < min_retention * n - 1e-12:
        return [True] * n
    return keep


def filter_and_rank(
    docs: Iterable[AbstractDoc],
    history: Sequence[HistoryEntry],
    current: QueryProfile,
    sd: float = DEFAULT_FILTER_SD,
    min_retention: float = DEFAULT_MIN_RETENTION,
) -> list[ScoredDoc]:
    """Score, filter, and sort descending; ties and the no-history case
    fall back to (provider, doc_id) order."""
    items = sorted(docs, key=lambda d: (d.provider, d.doc_id))
    scores = [personalization_score(doc_vector(d), history, current) for d in items]
    keep = apply_deviation_filter(scores, sd=sd, min_retention=min_retention)
    kept = [(s, d) for s, d, k in zip(scores, items, keep) if k]
    kept.sort(key=lambda pair: (-pair[0], pair[1].provider, pair[1].doc_id))
    return [
        ScoredDoc(doc=d, score=s, rank=i + 1) for i, (s, d) in enumerate(kept)
    ]


def rerank_within_query(
    results: Sequence[ScoredDoc],
    labels: Mapping[tuple[str, str], str],
) -> list[ScoredDoc]:
    """Reorder unlabeled docs by similarity to the relevant ones minus
    similarity to the irrelevant ones; labeled docs bracket the list.

    Display-order only: stored history weights are untouched.
    """
    known = {(r.doc.provider, r.doc.doc_id) for r in results}
    for key, value in labels.items():
        if key not in known:
            raise UnknownDocLabel(f"label for unknown doc {key}")
        if value not in (LABEL_RELEVANT, LABEL_IRRELEVANT):
            raise UnknownDocLabel(f"unknown label {value!r} for doc {key}")
    if not labels:
        return list(results)

    relevant = [r for r in results if labels.get((r.doc.provider, r.doc.doc_id)) == LABEL_RELEVANT]
    irrelevant = [r for r in results if labels.get((r.doc.provider, r.doc.doc_id)) == LABEL_IRRELEVANT]
    unlabeled = [r for r in results if (r.doc.provider, r.doc.doc_id) not in labels]

    rel_vecs = [doc_vector(r.doc) for r in relevant]
    irrel_vecs = [doc_vector(r.doc) for r in irrelevant]

    def pull(scored: ScoredDoc) -> float:
        vec = doc_vector(scored.doc)
        to_rel = sum(cosine_sim(vec, v) for v in rel_vecs) / len(rel_vecs) if rel_vecs else 0.0
        to_irrel = (
            sum(cosine_sim(vec, v) for v in irrel_vecs) / len(irrel_vecs) if irrel_vecs else 0.0
        )
        return to_rel - to_irrel

    unlabeled.sort(key=lambda r: (-pull(r), r.doc.provider, r.doc.doc_id))
    reordered = relevant + unlabeled + irrelevant
    return [
        ScoredDoc(doc=r.doc, score=r.score, rank=i + 1) for i, r in enumerate(reordered)
    ]
