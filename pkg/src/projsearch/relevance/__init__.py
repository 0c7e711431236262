"""Personalization: term vectors, similarity measures, scoring, re-ranking."""

from .scoring import (
    DEFAULT_FILTER_SD,
    DEFAULT_MIN_RETENTION,
    LABEL_IRRELEVANT,
    LABEL_RELEVANT,
    HistoryEntry,
    QueryProfile,
    ScoredDoc,
    UnknownDocLabel,
    apply_deviation_filter,
    doc_vector,
    filter_and_rank,
    personalization_score,
    query_profile,
    rerank_within_query,
)
from .similarity import cosine_sim, levenshtein, monge_elkan, query_sim, query_tokens, token_sim
from .stemming import stem, stem_tokens
from .textproc import TermVector, build_term_vector, stopwords, sum_vectors

__all__ = [
    "DEFAULT_FILTER_SD",
    "DEFAULT_MIN_RETENTION",
    "LABEL_IRRELEVANT",
    "LABEL_RELEVANT",
    "HistoryEntry",
    "QueryProfile",
    "ScoredDoc",
    "TermVector",
    "UnknownDocLabel",
    "apply_deviation_filter",
    "build_term_vector",
    "cosine_sim",
    "doc_vector",
    "filter_and_rank",
    "levenshtein",
    "monge_elkan",
    "personalization_score",
    "query_profile",
    "query_sim",
    "query_tokens",
    "rerank_within_query",
    "stem",
    "stem_tokens",
    "stopwords",
    "sum_vectors",
    "token_sim",
]
