"""Term-vector construction: tokenization, stop-word removal, frequency counts."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping

from projsearch.text import tokenize


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    """The shipped function-word list; changing the file breaks fixtures."""
    data = resources.files("projsearch.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w.strip() for w in data.splitlines() if w.strip())


@dataclass(frozen=True, eq=False)
class TermVector:
    """Sparse term -> frequency map with a cached Euclidean norm."""

    weights: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {t: int(c) for t, c in self.weights.items() if c}
        if any(c < 0 for c in cleaned.values()):
            raise ValueError("term frequencies are non-negative")
        object.__setattr__(self, "weights", cleaned)
        object.__setattr__(self, "_norm", math.sqrt(sum(c * c for c in cleaned.values())))

    @property
    def norm(self) -> float:
        return self._norm

    def __bool__(self) -> bool:
        return bool(self.weights)

    def __eq__(self, other):
        if not isinstance(other, TermVector):
            return NotImplemented
        return dict(self.weights) == dict(other.weights)

    def __hash__(self):
        return hash(frozenset(self.weights.items()))

    def dot(self, other: "TermVector") -> float:
        small, large = self.weights, other.weights
        if len(small) > len(large):
            small, large = large, small
        return float(sum(c * large.get(t, 0) for t, c in small.items()))

    def ordered_terms(self) -> list[tuple[str, int]]:
        """Terms by descending frequency, ties alphabetical."""
        return sorted(self.weights.items(), key=lambda kv: (-kv[1], kv[0]))


def build_term_vector(text: str) -> TermVector:
    """Tokenize, drop stop-words, and count; deterministic for a given text."""
    stop = stopwords()
    counts = Counter(tok for tok in tokenize(text) if tok not in stop)
    return TermVector(dict(counts))


def sum_vectors(vectors: Iterable[TermVector]) -> TermVector:
    """Element-wise sum; the joined vector of a set of abstracts."""
    total: Counter[str] = Counter()
    for vec in vectors:
        total.update(vec.weights)
    return TermVector(dict(total))
