"""Search orchestration shared by the HTTP API and the CLI.

One search request runs: parse -> normalize -> federated execute ->
history lookup (per mode) -> score/filter/rank -> record -> respond.
"""

from __future__ import annotations

from typing import Sequence

from projsearch.config import AppConfig
from projsearch.providers.base import AbstractDoc
from projsearch.providers.gateway import Gateway
from projsearch.query import normalize, parse
from projsearch.relevance.scoring import (
    ScoredDoc,
    filter_and_rank,
    query_profile,
    rerank_within_query,
)
from projsearch.store.store import (
    MODE_BASE,
    MODE_PROJECT,
    ProjectStore,
    QueryRecord,
    ValidationError,
)
from projsearch.suggest.engine import Suggestion, suggest_terms
from projsearch.relevance.textproc import build_term_vector

from .metrics import MetricsReport, build_metrics

SEARCH_MODES = ("quick", "base", "random", "project", "lifetime")


class NoLabelsYet(ValueError):
    pass


def _doc_payload(scored: ScoredDoc, label: str | None) -> dict:
    doc = scored.doc
    return {
        "provider": doc.provider,
        "doc_id": doc.doc_id,
        "title": doc.title,
        "abstract": doc.abstract_text,
        "alt_ids": [list(k) for k in doc.alt_ids],
        "score": scored.score,
        "rank": scored.rank,
        "label": label,
    }


class SearchService:
    def __init__(self, store: ProjectStore, gateway: Gateway, config: AppConfig | None = None):
        self.store = store
        self.gateway = gateway
        self.config = config or AppConfig()

    # -- searching -----------------------------------------------------------

    def search(
        self,
        user_id: str,
        query_text: str,
        mode: str = "quick",
        project_id: str | None = None,
        providers: Sequence[str] | None = None,
        limit: int | None = None,
        seed: int = 0,
        page_size: int | None = None,
    ) -> dict:
        if mode == "one-time":
            mode = "quick"
        if mode not in SEARCH_MODES:
            raise ValidationError(f"mode must be one of {SEARCH_MODES}")
        store_mode = MODE_BASE if mode in ("quick", "base") else mode
        if store_mode == MODE_PROJECT and project_id is None:
            raise ValidationError("project search requires project_id")
        self.store.get_user(user_id)
        if project_id is not None:
            self.store.get_project(project_id)

        ast = parse(query_text)
        nq = normalize(ast)
        profile = query_profile(nq)

        result = self.gateway.execute(
            nq, providers=providers, limit=limit or self.config.fetch_limit
        )

        if store_mode == MODE_PROJECT:
            query_index = self.store.next_project_index(project_id)
        else:
            query_index = self.store.next_session_index(user_id)
        history = self.store.history(user_id, project_id, store_mode, query_index, seed)

        ranked = filter_and_rank(
            result.docs,
            history,
            profile,
            sd=self.config.filter_sd,
            min_retention=self.config.filter_min_retention,
        )
        record = self.store.record_query(
            user_id,
            query_text,
            profile.atom_texts,
            nq.has_negation,
            [s.doc for s in ranked],
            mode=store_mode,
            project_id=project_id,
        )

        size = self.config.page_size if page_size is None else page_size
        page = ranked if size <= 0 else ranked[:size]
        return {
            "query_id": record.query_id,
            "query": query_text,
            "mode": mode,
            "project_id": project_id,
            "partial": result.partial,
            "failures": [
                {"provider": f.provider, "term": f.term, "error": f.error}
                for f in result.failures
            ],
            "total": len(ranked),
            "suggestions_available": False,
            "results": [_doc_payload(s, None) for s in page],
        }

    # -- labeling and views ----------------------------------------------------

    def label(self, query_id: str, provider: str, doc_id: str, label: str) -> dict:
        record = self.store.record_label(query_id, (provider, doc_id), label)
        return {
            "query_id": query_id,
            "labels": {f"{p}:{d}": val for (p, d), val in sorted(record.labels.items())},
            "suggestions_available": bool(record.labels),
        }

    def _scored_from_record(self, record: QueryRecord) -> list[ScoredDoc]:
        docs = []
        for i, key in enumerate(record.result_keys):
            title, abstract = self.store.doc_content(key)
            doc = AbstractDoc(doc_id=key[1], provider=key[0], title=title, abstract_text=abstract)
            docs.append(ScoredDoc(doc=doc, score=0.0, rank=i + 1))
        return docs

    def query_view(self, query_id: str, page_size: int | None = None) -> dict:
        record = self.store.get_query(query_id)
        scored = self._scored_from_record(record)
        size = self.config.page_size if page_size is None else page_size
        page = scored if size <= 0 else scored[:size]
        return {
            "query_id": record.query_id,
            "query": record.query_text,
            "mode": record.mode,
            "project_id": record.project_id,
            "total": len(scored),
            "suggestions_available": bool(record.labels),
            "results": [
                _doc_payload(s, record.labels.get((s.doc.provider, s.doc.doc_id)))
                for s in page
            ],
        }

    def rerank(self, query_id: str) -> dict:
        """Within-query reorder by current labels; display order only."""
        record = self.store.get_query(query_id)
        scored = self._scored_from_record(record)
        reordered = rerank_within_query(scored, record.labels)
        return {
            "query_id": record.query_id,
            "total": len(reordered),
            "results": [
                _doc_payload(s, record.labels.get((s.doc.provider, s.doc.doc_id)))
                for s in reordered
            ],
        }

    # -- suggestions -------------------------------------------------------------

    def suggestions(self, query_id: str, max_per_side: int | None = None) -> list[Suggestion]:
        record = self.store.get_query(query_id)
        if not record.labels:
            raise NoLabelsYet(f"{query_id} has no labeled results")
        relevant, irrelevant = [], []
        for key in record.result_keys:
            label = record.labels.get(key)
            if label is None:
                continue
            title, abstract = self.store.doc_content(key)
            vec = build_term_vector(f"{title} {abstract}")
            (relevant if label == "relevant" else irrelevant).append(vec)
        out = suggest_terms(
            parse(record.query_text),
            relevant,
            irrelevant,
            max_per_side=max_per_side or self.config.suggestion_max_per_side,
        )
        self.store.record_suggestions_shown(query_id, [s.term for s in out])
        return out

    def metrics(self, k: int = 10, rsb: dict[str, int] | None = None) -> MetricsReport:
        return build_metrics(self.store, k, rsb=rsb)
