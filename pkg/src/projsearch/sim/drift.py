"""Desk-scale topic-switch experiment: four history modes, six queries.

Each simulated session runs three queries on one topic then three on a
second; the labeler marks the ranked top ten each time.  Comparing the
project mode (history resets with the topic) against the lifetime mode
(history spans both topics) reproduces the concept-drift effect in
direction, not magnitude.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from projsearch.config import AppConfig
from projsearch.providers.gateway import Gateway
from projsearch.service.engine import SearchService
from projsearch.service.metrics import precision_at_k
from projsearch.store.store import (
    MODE_BASE,
    MODE_LIFETIME,
    MODE_PROJECT,
    MODE_RANDOM,
    ProjectStore,
)

from .corpus import ConfigError, Corpus, CorpusSpec, SimUser, build_corpus
from .report import DriftReport, point_stat

DRIFT_MODES = (MODE_BASE, MODE_RANDOM, MODE_PROJECT, MODE_LIFETIME)


@dataclass(frozen=True)
class DriftConfig:
    docs_per_topic: int = 300
    doc_length: int = 120
    vocab_per_topic: int = 60
    shared_fraction: float = 0.1
    queries_per_topic: int = 3
    label_depth: int = 10
    noise: float = 0.0
    fetch_limit: int = 5000
    filter_sd: float = 2.0
    filter_min_retention: float = 0.6

    def corpus_spec(self) -> CorpusSpec:
        return CorpusSpec(
            docs_per_topic=(self.docs_per_topic, self.docs_per_topic),
            doc_length=self.doc_length,
            vocab_per_topic=self.vocab_per_topic,
            shared_fraction=self.shared_fraction,
        )


def _session_queries(corpus: Corpus, rng: random.Random, config: DriftConfig) -> list[tuple[int, str]]:
    """One (topic, query) per index: a frequent exclusive term, or-ed with a
    shared term when one exists so results mix topics and ranking has room
    to act."""
    out = []
    for topic_id in (0, 1):
        topic = corpus.topics[topic_id]
        for _ in range(config.queries_per_topic):
            core = topic.core_terms[rng.randrange(min(4, len(topic.core_terms)))]
            if topic.shared_terms:
                shared = topic.shared_terms[rng.randrange(len(topic.shared_terms))]
                out.append((topic_id, f"{core} or {shared}"))
            else:
                out.append((topic_id, core))
    return out


def _run_session(
    mode: str,
    corpus: Corpus,
    queries: Sequence[tuple[int, str]],
    seed: int,
    config: DriftConfig,
) -> list[float]:
    store = ProjectStore()
    gateway = Gateway([corpus.provider], default_limit=config.fetch_limit)
    service = SearchService(
        store,
        gateway,
        AppConfig(
            page_size=config.label_depth,
            fetch_limit=config.fetch_limit,
            filter_sd=config.filter_sd,
            filter_min_retention=config.filter_min_retention,
        ),
    )
    user = store.create_user(f"sim-{mode}")
    labeler = SimUser(noise=config.noise)
    label_rng = random.Random(f"{seed}:{mode}:labels")

    projects: dict[int, str] = {}
    precisions = []
    for qi, (topic_id, query_text) in enumerate(queries, start=1):
        project_id = None
        if mode == MODE_PROJECT:
            if topic_id not in projects:
                projects[topic_id] = store.create_project(user.user_id, f"topic-{topic_id}").project_id
            project_id = projects[topic_id]
        response = service.search(
            user.user_id,
            query_text,
            mode=mode,
            project_id=project_id,
            seed=seed * 1000 + qi,
            page_size=config.label_depth,
        )
        results = response["results"]
        if len(results) < config.label_depth:
            raise ConfigError(
                f"query {query_text!r} returned {len(results)} docs; "
                f"need {config.label_depth} to label"
            )
        for row in results:
            doc_key = (row["provider"], row["doc_id"])
            label = labeler.label(corpus.topic_of[doc_key], topic_id, label_rng)
            store.record_label(response["query_id"], doc_key, label)
        precisions.append(
            precision_at_k(store.get_query(response["query_id"]), k=config.label_depth)
        )
    return precisions


def run_drift_experiment(
    modes: Sequence[str] = DRIFT_MODES,
    seeds: Sequence[int] = tuple(range(20)),
    config: DriftConfig = DriftConfig(),
) -> DriftReport:
    unknown = [m for m in modes if m not in DRIFT_MODES]
    if unknown:
        raise ConfigError(f"unknown history modes {unknown}")
    if not seeds:
        raise ConfigError("need at least one seed")

    n_queries = 2 * config.queries_per_topic
    samples: dict[str, list[list[float]]] = {m: [[] for _ in range(n_queries)] for m in modes}
    for seed in seeds:
        rng = random.Random(seed)
        corpus = build_corpus(config.corpus_spec(), rng)
        queries = _session_queries(corpus, rng, config)
        for mode in modes:
            for i, p in enumerate(_run_session(mode, corpus, queries, seed, config)):
                samples[mode][i].append(p)

    return DriftReport(
        seeds=tuple(seeds),
        curves={mode: [point_stat(vals) for vals in samples[mode]] for mode in modes},
    )
