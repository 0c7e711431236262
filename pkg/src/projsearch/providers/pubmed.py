"""PubMed adapter: esearch for ids, then efetch for titles and abstracts."""

from __future__ import annotations

import time
import xml.etree.ElementTree as ET

from projsearch.query.clauses import AtomicTerm

from .base import AbstractDoc, ProviderConfig, ProviderRejected
from .http import HttpFetcher

DEFAULT_BASE_URL = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils"


class PubmedProvider:
    name = "pubmed"

    def __init__(self, config: ProviderConfig = None, fetcher: HttpFetcher = None):
        self.config = config or ProviderConfig(base_url=DEFAULT_BASE_URL)
        self.fetcher = fetcher or HttpFetcher(
            self.name,
            timeout=self.config.request_timeout,
            min_interval=self.config.min_request_interval,
        )

    def fetch_term(self, atom: AtomicTerm, limit: int) -> list[AbstractDoc]:
        limit = min(limit, self.config.max_results_per_term)
        id_payload = self.fetcher.fetch(
            f"{self.config.base_url}/esearch.fcgi",
            params={"db": "pubmed", "term": atom.text, "retmax": str(limit)},
        )
        ids = self._parse_ids(id_payload)
        if not ids:
            return []
        fetch_payload = self.fetcher.fetch(
            f"{self.config.base_url}/efetch.fcgi",
            params={
                "db": "pubmed",
                "id": ",".join(ids),
                "rettype": "abstract",
                "retmode": "xml",
            },
        )
        return self._parse_articles(fetch_payload)

    def _parse_ids(self, payload: str) -> list[str]:
        root = self._parse_xml(payload)
        return [node.text.strip() for node in root.findall(".//IdList/Id") if node.text]

    def _parse_articles(self, payload: str) -> list[AbstractDoc]:
        root = self._parse_xml(payload)
        docs = []
        now = time.time()
        for article in root.findall(".//PubmedArticle"):
            pmid = article.findtext(".//MedlineCitation/PMID", default="").strip()
            title = " ".join(
                "".join(article.find(".//ArticleTitle").itertext()).split()
            ) if article.find(".//ArticleTitle") is not None else ""
            sections = [
                "".join(node.itertext()).strip()
                for node in article.findall(".//Abstract/AbstractText")
            ]
            if not pmid or not title:
                continue
            docs.append(
                AbstractDoc(
                    doc_id=pmid,
                    provider=self.name,
                    title=title,
                    abstract_text=" ".join(s for s in sections if s),
                    fetched_at=now,
                )
            )
        return docs

    def _parse_xml(self, payload: str):
        try:
            return ET.fromstring(payload)
        except ET.ParseError as exc:
            raise ProviderRejected(self.name, f"malformed response: {exc}") from exc
