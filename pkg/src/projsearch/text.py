"""Shared text primitives: tokenization and token-boundary matching."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Sequence

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase `text` and split it into alphanumeric tokens."""
    return _TOKEN_RE.findall(text.lower())


@lru_cache(maxsize=8192)
def cached_tokens(text: str) -> tuple[str, ...]:
    return tuple(tokenize(text))


def contains_tokens(haystack: Sequence[str], needle: Sequence[str]) -> bool:
    """True if `needle` occurs as a contiguous run of tokens in `haystack`."""
    if not needle:
        return False
    if len(needle) == 1:
        return needle[0] in haystack
    n = len(needle)
    first = needle[0]
    limit = len(haystack) - n + 1
    for i in range(limit):
        if haystack[i] == first and tuple(haystack[i : i + n]) == tuple(needle):
            return True
    return False
