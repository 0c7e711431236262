"""Application configuration: one JSON file plus environment overrides.

Every key can be overridden through `PROJSEARCH_<KEY>` variables, e.g.
`PROJSEARCH_FILTER_SD=1.5` or `PROJSEARCH_ARXIV_BASE_URL=...`; the
`PROJSEARCH_PROVIDERS` override is a comma-separated enabled list.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Mapping

from projsearch.providers.arxiv import DEFAULT_BASE_URL as ARXIV_URL
from projsearch.providers.pubmed import DEFAULT_BASE_URL as PUBMED_URL

ENV_PREFIX = "PROJSEARCH_"


@dataclass
class ProviderSettings:
    base_url: str = ""
    max_results_per_term: int = 100
    request_timeout: float = 10.0
    min_request_interval: float = 0.5


@dataclass
class AppConfig:
    store_dir: str = "./projsearch-store"
    port: int = 8000
    page_size: int = 10
    fetch_limit: int = 100
    filter_sd: float = 2.0
    filter_min_retention: float = 0.6
    suggestion_max_per_side: int = 5
    providers: list[str] = field(default_factory=lambda: ["local"])
    local_corpus: str | None = None
    arxiv: ProviderSettings = field(default_factory=lambda: ProviderSettings(base_url=ARXIV_URL))
    pubmed: ProviderSettings = field(
        default_factory=lambda: ProviderSettings(base_url=PUBMED_URL, min_request_interval=0.4)
    )


_SCALAR_KEYS = {
    "store_dir": str,
    "port": int,
    "page_size": int,
    "fetch_limit": int,
    "filter_sd": float,
    "filter_min_retention": float,
    "suggestion_max_per_side": int,
    "local_corpus": str,
}


def _apply_mapping(config: AppConfig, data: Mapping) -> None:
    for key, caster in _SCALAR_KEYS.items():
        if key in data and data[key] is not None:
            setattr(config, key, caster(data[key]))
    if "providers" in data:
        config.providers = list(data["providers"])
    for name in ("arxiv", "pubmed"):
        if name in data:
            settings = getattr(config, name)
            for f in fields(ProviderSettings):
                if f.name in data[name]:
                    setattr(settings, f.name, type(getattr(settings, f.name))(data[name][f.name]))


def load_config(path: str | Path | None = None, env: Mapping[str, str] = os.environ) -> AppConfig:
    config = AppConfig()
    if path is not None:
        _apply_mapping(config, json.loads(Path(path).read_text("utf-8")))

    for key, caster in _SCALAR_KEYS.items():
        raw = env.get(ENV_PREFIX + key.upper())
        if raw is not None:
            setattr(config, key, caster(raw))
    raw = env.get(ENV_PREFIX + "PROVIDERS")
    if raw is not None:
        config.providers = [p.strip() for p in raw.split(",") if p.strip()]
    for name in ("arxiv", "pubmed"):
        settings = getattr(config, name)
        for f in fields(ProviderSettings):
            raw = env.get(f"{ENV_PREFIX}{name.upper()}_{f.name.upper()}")
            if raw is not None:
                setattr(settings, f.name, type(getattr(settings, f.name))(raw))
    return config
