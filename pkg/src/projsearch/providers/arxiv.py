"""arXiv adapter: one Atom-feed query per atomic term."""

from __future__ import annotations

import time
import xml.etree.ElementTree as ET

from projsearch.query.clauses import AtomicTerm

from .base import AbstractDoc, ProviderConfig, ProviderRejected
from .http import HttpFetcher

_ATOM_NS = {"atom": "http://www.w3.org/2005/Atom"}

DEFAULT_BASE_URL = "http://export.arxiv.org"


class ArxivProvider:
    name = "arxiv"

    def __init__(self, config: ProviderConfig = None, fetcher: HttpFetcher = None):
        self.config = config or ProviderConfig(base_url=DEFAULT_BASE_URL)
        self.fetcher = fetcher or HttpFetcher(
            self.name,
            timeout=self.config.request_timeout,
            min_interval=self.config.min_request_interval,
        )

    def fetch_term(self, atom: AtomicTerm, limit: int) -> list[AbstractDoc]:
        limit = min(limit, self.config.max_results_per_term)
        payload = self.fetcher.fetch(
            f"{self.config.base_url}/api/query",
            params={
                "search_query": f'all:"{atom.text}"',
                "start": "0",
                "max_results": str(limit),
            },
        )
        return self._parse_feed(payload)

    def _parse_feed(self, payload: str) -> list[AbstractDoc]:
        try:
            root = ET.fromstring(payload)
        except ET.ParseError as exc:
            raise ProviderRejected(self.name, f"malformed feed: {exc}") from exc
        docs = []
        now = time.time()
        for entry in root.findall("atom:entry", _ATOM_NS):
            entry_id = _text(entry, "atom:id")
            title = _text(entry, "atom:title")
            summary = _text(entry, "atom:summary")
            if not entry_id or not title:
                continue
            docs.append(
                AbstractDoc(
                    doc_id=entry_id.rsplit("/", 1)[-1],
                    provider=self.name,
                    title=" ".join(title.split()),
                    abstract_text=" ".join(summary.split()),
                    fetched_at=now,
                )
            )
        return docs


def _text(element, path: str) -> str:
    node = element.find(path, _ATOM_NS)
    return node.text.strip() if node is not None and node.text else ""
