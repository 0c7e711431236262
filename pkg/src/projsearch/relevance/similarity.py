"""Similarity primitives: cosine over term vectors, Levenshtein edit
distance, Monge-Elkan token-set similarity, and whole-query similarity."""

from __future__ import annotations

from typing import Sequence

from projsearch.text import tokenize

from .stemming import stem
from .textproc import TermVector


def cosine_sim(u: TermVector, v: TermVector) -> float:
    """dot(u,v) / (|u||v|), 0.0 when either vector is empty."""
    if not u or not v:
        return 0.0
    return u.dot(v) / (u.norm * v.norm)


def levenshtein(a: str, b: str) -> int:
    """Minimal insert/delete/substitute count, two-row dynamic program."""
    if a == b:
        return 0
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return len(b)
    previous = list(range(len(a) + 1))
    for i, cb in enumerate(b, start=1):
        current = [i]
        for j, ca in enumerate(a, start=1):
            cost = previous[j - 1] + (ca != cb)
            current.append(min(previous[j] + 1, current[j - 1] + 1, cost))
        previous = current
    return previous[len(a)]


def token_sim(a: str, b: str) -> float:
    """Edit-distance similarity 1 - d/max(|a|,|b|); 1.0 for two empty strings."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def monge_elkan(tokens_a: Sequence[str], tokens_b: Sequence[str]) -> float:
    """Mean over tokens_a of the best token_sim against tokens_b.

    Asymmetric in its arguments; empty tokens_a (or tokens_b) gives 0.
    """
    if not tokens_a or not tokens_b:
        return 0.0
    total = 0.0
    for a in tokens_a:
        total += max(token_sim(a, b) for b in tokens_b)
    return total / len(tokens_a)


def query_tokens(atom_texts: Sequence[str]) -> list[str]:
    """Stemmed word tokens of the query's atomic terms, in order."""
    out: list[str] = []
    for text in atom_texts:
        out.extend(stem(tok) for tok in tokenize(text))
    return out


def query_sim(
    tokens_a: Sequence[str],
    tokens_b: Sequence[str],
    negated_a: bool,
    negated_b: bool,
) -> float:
    """Monge-Elkan over stemmed query tokens; the sign flips when exactly
    one of the two queries carries a negation."""
    score = monge_elkan(tokens_a, tokens_b)
    if negated_a != negated_b:
        return -score
    return score
