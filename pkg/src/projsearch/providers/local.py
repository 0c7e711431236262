"""Offline corpus provider backed by a tab-separated file or in-memory docs.

Corpus file format: one record per line, UTF-8, tab-separated
``doc_id<TAB>title<TAB>abstract``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from projsearch.query.clauses import AtomicTerm, term_matches
from projsearch.text import tokenize

from .base import AbstractDoc


class LocalProvider:
    name = "local"

    def __init__(self, docs: Iterable[AbstractDoc] = ()):
        self._docs: list[AbstractDoc] = []
        self._tokens: list[tuple[str, ...]] = []
        for doc in docs:
            self._append(doc)

    def _append(self, doc: AbstractDoc) -> None:
        self._docs.append(doc)
        self._tokens.append(tuple(tokenize(f"{doc.title} {doc.abstract_text}")))

    def add(self, doc_id: str, title: str, abstract: str) -> AbstractDoc:
        doc = AbstractDoc(doc_id=doc_id, provider=self.name, title=title, abstract_text=abstract)
        self._append(doc)
        return doc

    @classmethod
    def from_file(cls, path: str | Path) -> "LocalProvider":
        provider = cls()
        for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{line_no}: expected doc_id<TAB>title<TAB>abstract")
            provider.add(*parts)
        return provider

    def __len__(self) -> int:
        return len(self._docs)

    def documents(self) -> list[AbstractDoc]:
        return list(self._docs)

    def fetch_term(self, atom: AtomicTerm, limit: int) -> list[AbstractDoc]:
        """Corpus-order scan for token-boundary matches, truncated at `limit`."""
        out = []
        for doc, tokens in zip(self._docs, self._tokens):
            if term_matches(atom, tokens):
                out.append(doc)
                if len(out) >= limit:
                    break
        return out
