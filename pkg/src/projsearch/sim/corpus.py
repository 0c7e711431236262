"""Synthetic two-topic corpora and the deterministic simulated labeler.

Each topic draws abstracts from a Zipf-weighted vocabulary of invented
words; a configurable fraction of the vocabulary is shared between
topics (at interleaved weight ranks), which is what makes result sets
mix topics and ranking matter.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass, field

from projsearch.providers.base import DocKey
from projsearch.providers.local import LocalProvider


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SyntheticTopic:
    topic_id: int
    core_terms: tuple[str, ...]    # exclusive to this topic, weight-rank order
    shared_terms: tuple[str, ...]  # common to all topics, weight-rank order
    vocabulary: tuple[tuple[str, float], ...]  # (term, weight) in rank order


@dataclass(frozen=True)
class CorpusSpec:
    docs_per_topic: tuple[int, ...] = (300, 300)
    doc_length: int = 120
    vocab_per_topic: int = 60
    shared_fraction: float = 0.1

    def __post_init__(self):
        if len(self.docs_per_topic) < 2:
            raise ConfigError("need at least two topics")
        if any(n < 20 for n in self.docs_per_topic):
            raise ConfigError("each topic needs at least 20 docs")
        if not 0.0 <= self.shared_fraction <= 0.5:
            raise ConfigError("shared_fraction must be in [0, 0.5]")
        if self.vocab_per_topic < 10 or self.doc_length < 20:
            raise ConfigError("vocabulary and doc length are too small")


@dataclass
class Corpus:
    provider: LocalProvider
    topic_of: dict[DocKey, int]
    topics: list[SyntheticTopic]


def _make_words(rng: random.Random, count: int, taken: set[str]) -> list[str]:
    words = []
    while len(words) < count:
        word = "".join(rng.choice(string.ascii_lowercase) for _ in range(7))
        if word not in taken:
            taken.add(word)
            words.append(word)
    return words


def _shared_rank_positions(vocab_size: int, n_shared: int) -> list[int]:
    # spread shared terms over mid ranks so they are frequent enough to
    # bridge topics without dominating any document
    if n_shared == 0:
        return []
    step = max(1, vocab_size // n_shared)
    return [min(3 + i * step, vocab_size - 1) for i in range(n_shared)]


def build_topics(spec: CorpusSpec, rng: random.Random) -> list[SyntheticTopic]:
    n_topics = len(spec.docs_per_topic)
    n_shared = int(spec.vocab_per_topic * spec.shared_fraction)
    taken: set[str] = set()
    shared = _make_words(rng, n_shared, taken)
    positions = set(_shared_rank_positions(spec.vocab_per_topic, n_shared))

    topics = []
    for topic_id in range(n_topics):
        core = _make_words(rng, spec.vocab_per_topic - n_shared, taken)
        vocab: list[tuple[str, float]] = []
        core_iter = iter(core)
        shared_iter = iter(shared)
        for rank in range(spec.vocab_per_topic):
            term = next(shared_iter) if rank in positions else next(core_iter)
            vocab.append((term, 1.0 / (rank + 1)))
        topics.append(
            SyntheticTopic(
                topic_id=topic_id,
                core_terms=tuple(core),
                shared_terms=tuple(shared),
                vocabulary=tuple(vocab),
            )
        )
    return topics


def build_corpus(spec: CorpusSpec, rng: random.Random) -> Corpus:
    """Generate the corpus; doc ids are topic-interleaved so that the
    neutral (provider, doc_id) ordering carries no topic signal."""
    topics = build_topics(spec, rng)
    drafts: list[tuple[int, str]] = []
    for topic, count in zip(topics, spec.docs_per_topic):
        terms = [t for t, _ in topic.vocabulary]
        weights = [w for _, w in topic.vocabulary]
        for _ in range(count):
            tokens = rng.choices(terms, weights=weights, k=spec.doc_length + 6)
            drafts.append((topic.topic_id, " ".join(tokens)))
    rng.shuffle(drafts)

    provider = LocalProvider()
    topic_of: dict[DocKey, int] = {}
    for i, (topic_id, text) in enumerate(drafts):
        doc_id = f"d{i:04d}"
        tokens = text.split()
        doc = provider.add(doc_id, " ".join(tokens[:6]), " ".join(tokens[6:]))
        topic_of[doc.key] = topic_id
    return Corpus(provider=provider, topic_of=topic_of, topics=topics)


@dataclass(frozen=True)
class SimUser:
    """Labels a doc relevant iff it was generated by the session's current
    topic; `noise` flips each label independently."""

    noise: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.noise <= 0.2:
            raise ConfigError("noise must be in [0, 0.2]")

    def label(self, doc_topic: int, current_topic: int, rng: random.Random) -> str:
        relevant = doc_topic == current_topic
        if self.noise and rng.random() < self.noise:
            relevant = not relevant
        return "relevant" if relevant else "irrelevant"
