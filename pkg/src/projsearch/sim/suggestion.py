"""Desk-scale next-query experiment: how many queries until the labeled
top ten crosses a precision threshold, per query-choice policy.

The corpus has one relevant topic and a larger distractor topic; the
free-query pool narrows gradually (as a human would), while suggestion
policies rewrite the last query from its labels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from projsearch.providers.gateway import Gateway
from projsearch.query import normalize, parse
from projsearch.relevance.scoring import doc_vector
from projsearch.suggest.engine import suggest_terms

from .corpus import ConfigError, Corpus, CorpusSpec, SimUser, build_corpus
from .report import SuggestionReport, point_stat

POLICY_SEARCH_ONLY = "search_only"
POLICY_SUGGESTION_ONLY = "suggestion_only"
POLICY_SUGGESTION_AND_SEARCH = "suggestion_and_search"
SUGGESTION_POLICIES = (
    POLICY_SEARCH_ONLY,
    POLICY_SUGGESTION_ONLY,
    POLICY_SUGGESTION_AND_SEARCH,
)


@dataclass(frozen=True)
class SuggestionSimConfig:
    relevant_docs: int = 200
    distractor_docs: int = 400
    doc_length: int = 120
    vocab_per_topic: int = 60
    shared_fraction: float = 0.1
    label_depth: int = 10
    threshold: float = 50.0
    max_rounds: int = 8
    noise: float = 0.0
    fetch_limit: int = 5000
    max_per_side: int = 5

    def corpus_spec(self) -> CorpusSpec:
        return CorpusSpec(
            docs_per_topic=(self.relevant_docs, self.distractor_docs),
            doc_length=self.doc_length,
            vocab_per_topic=self.vocab_per_topic,
            shared_fraction=self.shared_fraction,
        )


def _query_pool(corpus: Corpus, config: SuggestionSimConfig) -> list[str]:
    """Free-text queries per round: an exclusive relevant-topic term or-ed
    with a progressively rarer shared term."""
    topic = corpus.topics[0]
    n_shared = len(topic.shared_terms)
    pool = []
    for r in range(config.max_rounds):
        core = topic.core_terms[r % min(4, len(topic.core_terms))]
        if n_shared:
            shared = topic.shared_terms[min(r, n_shared - 1)]
            pool.append(f"{core} or {shared}")
        else:
            pool.append(core)
    return pool


def _top_docs(gateway: Gateway, query_text: str, config: SuggestionSimConfig):
    result = gateway.execute(normalize(parse(query_text)), limit=config.fetch_limit)
    docs = list(result.docs)
    if len(docs) < config.label_depth:
        raise ConfigError(
            f"query {query_text!r} returned {len(docs)} docs; need {config.label_depth}"
        )
    return docs[: config.label_depth]


def _true_precision(gateway: Gateway, corpus: Corpus, query_text: str, config) -> float:
    top = _top_docs(gateway, query_text, config)
    relevant = sum(1 for d in top if corpus.topic_of[d.key] == 0)
    return 100.0 * relevant / len(top)


def _run_policy(
    policy: str,
    corpus: Corpus,
    gateway: Gateway,
    pool: Sequence[str],
    seed: int,
    config: SuggestionSimConfig,
) -> tuple[int, list[float]]:
    labeler = SimUser(noise=config.noise)
    rng = random.Random(f"{seed}:{policy}:labels")
    current = pool[0]
    curve: list[float] = []
    for r in range(config.max_rounds):
        top = _top_docs(gateway, current, config)
        labels = [
            (doc, labeler.label(corpus.topic_of[doc.key], 0, rng)) for doc in top
        ]
        precision = 100.0 * sum(1 for _, l in labels if l == "relevant") / len(labels)
        curve.append(precision)
        if precision >= config.threshold:
            return r + 1, curve

        rel_vecs = [doc_vector(d) for d, l in labels if l == "relevant"]
        irrel_vecs = [doc_vector(d) for d, l in labels if l == "irrelevant"]
        suggestions = suggest_terms(
            parse(current), rel_vecs, irrel_vecs, max_per_side=config.max_per_side
        )
        suggested = suggestions[0].suggested_query if suggestions else None
        next_free = pool[min(r + 1, len(pool) - 1)]

        if policy == POLICY_SEARCH_ONLY:
            current = next_free
        elif policy == POLICY_SUGGESTION_ONLY:
            # no suggestion available -> the user can only rerun the query
            current = suggested or current
        else:
            if suggested is not None and _true_precision(
                gateway, corpus, suggested, config
            ) > _true_precision(gateway, corpus, next_free, config):
                current = suggested
            else:
                current = next_free
    return config.max_rounds, curve  # capped: threshold never reached


def run_suggestion_experiment(
    policies: Sequence[str] = SUGGESTION_POLICIES,
    seeds: Sequence[int] = tuple(range(20)),
    config: SuggestionSimConfig = SuggestionSimConfig(),
) -> SuggestionReport:
    unknown = [p for p in policies if p not in SUGGESTION_POLICIES]
    if unknown:
        raise ConfigError(f"unknown policies {unknown}")
    if not seeds:
        raise ConfigError("need at least one seed")

    rounds: dict[str, list[float]] = {p: [] for p in policies}
    curves: dict[str, list[list[float]]] = {
        p: [[] for _ in range(config.max_rounds)] for p in policies
    }
    for seed in seeds:
        rng = random.Random(seed)
        corpus = build_corpus(config.corpus_spec(), rng)
        pool = _query_pool(corpus, config)
        gateway = Gateway([corpus.provider], default_limit=config.fetch_limit)
        for policy in policies:
            used, curve = _run_policy(policy, corpus, gateway, pool, seed, config)
            rounds[policy].append(float(used))
            for i, value in enumerate(curve):
                curves[policy][i].append(value)

    return SuggestionReport(
        seeds=tuple(seeds),
        threshold=config.threshold,
        queries_to_threshold={p: point_stat(rounds[p]) for p in policies},
        precision_curves={
            p: [point_stat(vals) for vals in curves[p] if vals] for p in policies
        },
    )
