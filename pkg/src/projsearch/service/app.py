"""Versioned HTTP surface over the search engine.

Endpoints (all JSON unless noted):
    POST /v1/users                      create user, returns bearer token
    GET  /v1/projects                   list own projects
    POST /v1/projects                   create project
    POST /v1/search                     quick/project/lifetime/random search
    GET  /v1/queries/{id}               stored query view with labels
    POST /v1/queries/{id}/labels        set a relevant/irrelevant label
    POST /v1/queries/{id}/rerank        within-query reorder by labels
    GET  /v1/queries/{id}/suggestions   next-query suggestions (409 until labeled)
    GET  /v1/metrics                    precision@k per query and mode
    GET  /v1/export/log                 NDJSON action log
    GET  /v1/health
"""

from __future__ import annotations

import json

from fastapi import Depends, FastAPI, Header, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from projsearch.config import AppConfig
from projsearch.providers import (
    AllProvidersFailed,
    ArxivProvider,
    Gateway,
    LocalProvider,
    ProviderConfig,
    PubmedProvider,
)
from projsearch.query import QueryError
from projsearch.store.store import Conflict, NotFound, ProjectStore, ValidationError

from .engine import NoLabelsYet, SearchService


class UserCreate(BaseModel):
    display_name: str


class ProjectCreate(BaseModel):
    name: str


class SearchRequest(BaseModel):
    query: str
    mode: str = "quick"
    project_id: str | None = None
    providers: list[str] | None = None
    limit: int | None = None
    seed: int = 0
    page_size: int | None = None


class LabelRequest(BaseModel):
    provider: str
    doc_id: str
    label: str


def build_service(config: AppConfig, store: ProjectStore | None = None) -> SearchService:
    """Wire providers, gateway, and store from configuration."""
    providers = []
    for name in config.providers:
        if name == "local":
            if config.local_corpus:
                providers.append(LocalProvider.from_file(config.local_corpus))
            else:
                providers.append(LocalProvider())
        elif name == "arxiv":
            providers.append(
                ArxivProvider(
                    ProviderConfig(
                        base_url=config.arxiv.base_url,
                        max_results_per_term=config.arxiv.max_results_per_term,
                        request_timeout=config.arxiv.request_timeout,
                        min_request_interval=config.arxiv.min_request_interval,
                    )
                )
            )
        elif name == "pubmed":
            providers.append(
                PubmedProvider(
                    ProviderConfig(
                        base_url=config.pubmed.base_url,
                        max_results_per_term=config.pubmed.max_results_per_term,
                        request_timeout=config.pubmed.request_timeout,
                        min_request_interval=config.pubmed.min_request_interval,
                    )
                )
            )
        else:
            raise ValidationError(f"unknown provider {name!r}")
    store = store or ProjectStore(config.store_dir)
    gateway = Gateway(providers, default_limit=config.fetch_limit)
    return SearchService(store, gateway, config)


def create_app(service: SearchService | None = None, config: AppConfig | None = None) -> FastAPI:
    config = config or AppConfig()
    service = service or build_service(config)
    app = FastAPI(title="projsearch", version="0.1.0")
    app.state.service = service
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(QueryError)
    async def _query_error(_req: Request, exc: QueryError):
        return JSONResponse(
            status_code=400,
            content={
                "error": type(exc).__name__,
                "message": str(exc),
                "position": exc.position,
            },
        )

    @app.exception_handler(ValidationError)
    async def _validation(_req: Request, exc: ValidationError):
        return JSONResponse(status_code=400, content={"error": "ValidationError", "message": str(exc)})

    @app.exception_handler(NotFound)
    async def _not_found(_req: Request, exc: NotFound):
        return JSONResponse(status_code=404, content={"error": "NotFound", "message": str(exc)})

    @app.exception_handler(Conflict)
    async def _conflict(_req: Request, exc: Conflict):
        return JSONResponse(status_code=409, content={"error": "Conflict", "message": str(exc)})

    @app.exception_handler(NoLabelsYet)
    async def _no_labels(_req: Request, exc: NoLabelsYet):
        return JSONResponse(status_code=409, content={"error": "NoLabelsYet", "message": str(exc)})

    @app.exception_handler(AllProvidersFailed)
    async def _providers_down(_req: Request, exc: AllProvidersFailed):
        return JSONResponse(
            status_code=502, content={"error": "AllProvidersFailed", "message": str(exc)}
        )

    def current_user(authorization: str = Header(default="")):
        token = authorization.removeprefix("Bearer ").strip()
        user = service.store.find_user_by_token(token) if token else None
        if user is None:
            raise HTTPException(status_code=401, detail="missing or invalid bearer token")
        return user

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "providers": service.gateway.provider_names}

    @app.post("/v1/users", status_code=201)
    def create_user(body: UserCreate):
        user = service.store.create_user(body.display_name)
        return {"user_id": user.user_id, "display_name": user.display_name, "token": user.token}

    @app.get("/v1/projects")
    def list_projects(user=Depends(current_user)):
        return {
            "projects": [
                {
                    "project_id": p.project_id,
                    "name": p.name,
                    "statistics": p.statistics,
                }
                for p in service.store.list_projects(user.user_id)
            ]
        }

    @app.post("/v1/projects", status_code=201)
    def create_project(body: ProjectCreate, user=Depends(current_user)):
        project = service.store.create_project(user.user_id, body.name)
        return {"project_id": project.project_id, "name": project.name, "statistics": project.statistics}

    @app.post("/v1/search")
    def search(body: SearchRequest, user=Depends(current_user)):
        if body.project_id is not None:
            project = service.store.get_project(body.project_id)
            if project.owner != user.user_id:
                raise NotFound(f"project {body.project_id}")
        return service.search(
            user.user_id,
            body.query,
            mode=body.mode,
            project_id=body.project_id,
            providers=body.providers,
            limit=body.limit,
            seed=body.seed,
            page_size=body.page_size,
        )

    def _own_query(query_id: str, user) :
        record = service.store.get_query(query_id)
        if record.user_id != user.user_id:
            raise NotFound(f"query {query_id}")
        return record

    @app.get("/v1/queries/{query_id}")
    def query_view(query_id: str, page_size: int | None = None, user=Depends(current_user)):
        _own_query(query_id, user)
        return service.query_view(query_id, page_size=page_size)

    @app.post("/v1/queries/{query_id}/labels")
    def set_label(query_id: str, body: LabelRequest, user=Depends(current_user)):
        _own_query(query_id, user)
        return service.label(query_id, body.provider, body.doc_id, body.label)

    @app.post("/v1/queries/{query_id}/rerank")
    def rerank(query_id: str, user=Depends(current_user)):
        _own_query(query_id, user)
        return service.rerank(query_id)

    @app.get("/v1/queries/{query_id}/suggestions")
    def suggestions(query_id: str, user=Depends(current_user)):
        _own_query(query_id, user)
        return {
            "query_id": query_id,
            "suggestions": [
                {
                    "term": s.term,
                    "direction": s.direction,
                    "z_score": s.z_score,
                    "suggested_query": s.suggested_query,
                }
                for s in service.suggestions(query_id)
            ],
        }

    @app.get("/v1/metrics")
    def metrics(k: int = 10, rsb: str | None = None, user=Depends(current_user)):
        # rsb: comma list of mode:subject-count pairs, e.g. "base:25,lifetime:35"
        parsed: dict[str, int] | None = None
        if rsb:
            try:
                parsed = {
                    part.split(":")[0]: int(part.split(":")[1])
                    for part in rsb.split(",")
                    if part.strip()
                }
            except (IndexError, ValueError):
                raise ValidationError("rsb must look like mode:count,mode:count")
        return service.metrics(k, rsb=parsed).as_dict()

    @app.get("/v1/export/log")
    def export_log(
        user_id: str | None = None,
        project_id: str | None = None,
        since: float | None = None,
        until: float | None = None,
        user=Depends(current_user),
    ):
        events = service.store.export_log(
            user_id=user_id, project_id=project_id, since=since, until=until
        )
        body = "\n".join(json.dumps(ev, sort_keys=True) for ev in events)
        return PlainTextResponse(body + ("\n" if body else ""), media_type="application/x-ndjson")

    return app
