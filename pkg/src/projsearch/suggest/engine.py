"""Next-query suggestion from labeled results.

The relevant abstracts' joined term vector nominates high-outlier terms
(z-score at least one over the distinct-term frequency distribution) to
conjoin with "and X"; the irrelevant side symmetrically nominates
exclusions with "and not X".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from projsearch.query import Node, parse, render_ast
from projsearch.query.clauses import NormalizedQuery, normalize
from projsearch.relevance.textproc import TermVector, stopwords, sum_vectors

DIRECTION_ADD = "add"
DIRECTION_REMOVE = "remove"

DEFAULT_MAX_PER_SIDE = 5
Z_THRESHOLD = 1.0


@dataclass(frozen=True)
class Suggestion:
    term: str
    direction: str  # "add" | "remove"
    z_score: float
    suggested_query: str


def joined_vector(abstracts: Sequence[TermVector]) -> TermVector:
    """Element-wise sum of the abstracts' term vectors."""
    return sum_vectors(abstracts)


def _zscores(vector: TermVector) -> list[tuple[str, float]]:
    freqs = list(vector.weights.values())
    n = len(freqs)
    if n == 0:
        return []
    mean = sum(freqs) / n
    sigma = math.sqrt(sum((f - mean) ** 2 for f in freqs) / n)
    if sigma == 0:
        return []
    return [(term, (count - mean) / sigma) for term, count in vector.ordered_terms()]


def _side(
    query_ast: Node,
    vectors: Sequence[TermVector],
    direction: str,
    max_per_side: int,
) -> list[Suggestion]:
    existing = {text for text in normalize(query_ast).atom_texts()}
    stop = stopwords()
    base = render_ast(query_ast)
    joiner = " and " if direction == DIRECTION_ADD else " and not "
    picked = []
    for term, z in sorted(_zscores(joined_vector(vectors)), key=lambda tz: (-tz[1], tz[0])):
        if z < Z_THRESHOLD or term in existing or term in stop:
            continue
        picked.append(
            Suggestion(
                term=term,
                direction=direction,
                z_score=z,
                suggested_query=f"{base}{joiner}{term}",
            )
        )
        if len(picked) >= max_per_side:
            break
    return picked


def suggest_terms(
    last_query: Node,
    relevant: Sequence[TermVector],
    irrelevant: Sequence[TermVector],
    max_per_side: int = DEFAULT_MAX_PER_SIDE,
) -> list[Suggestion]:
    """Additions from the relevant side, removals from the irrelevant side;
    add-suggestions first, each side ordered by descending z-score."""
    out = _side(last_query, relevant, DIRECTION_ADD, max_per_side)
    out += _side(last_query, irrelevant, DIRECTION_REMOVE, max_per_side)
    return out


def apply_suggestion(suggestion: Suggestion) -> Node:
    """Parse the suggested query; the clause form gains exactly one clause."""
    return parse(suggestion.suggested_query)
