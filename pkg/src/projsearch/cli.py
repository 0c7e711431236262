"""Headless operation: serve the API, search, label, suggest, manage
projects, run simulations, export the action log.

Exit codes: 0 success, 1 validation/usage error, 2 provider failure.
Every option can come from a `PROJSEARCH_*` environment variable.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from projsearch.config import AppConfig, load_config
from projsearch.providers.base import AllProvidersFailed, ProviderError
from projsearch.query import QueryError
from projsearch.service.app import build_service, create_app
from projsearch.service.engine import SearchService
from projsearch.sim.corpus import ConfigError
from projsearch.sim.drift import DRIFT_MODES, DriftConfig, run_drift_experiment
from projsearch.sim.suggestion import (
    SUGGESTION_POLICIES,
    SuggestionSimConfig,
    run_suggestion_experiment,
)
from projsearch.store.store import Conflict, NotFound, ValidationError

GRAMMAR_HELP = """\
Boolean query grammar:
    query := expr
    expr  := term (("and" | "or" | "and not") term)*
    term  := ATOM | PHRASE | "(" expr ")"

Operators share one precedence level, left to right; parentheses
override.  Unquoted word runs form one multi-word term; "double
quotes" form a phrase.  Bare "not" and "or not" are rejected, and a
negated term cannot take part in an "or".
Examples:  gold nanorobotics and gold
           a or (b and c) and not e
           "machine learning" and not survey
"""


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _run(ctx, fn):
    try:
        return fn()
    except QueryError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        click.echo(GRAMMAR_HELP, err=True)
        sys.exit(1)
    except (ValidationError, NotFound, Conflict, ConfigError, ValueError) as exc:
        _fail(str(exc), 1)
    except AllProvidersFailed as exc:
        _fail(f"all providers failed: {exc}", 2)
    except ProviderError as exc:
        _fail(str(exc), 2)


def _build_config(config_path, store_dir, providers, corpus) -> AppConfig:
    config = load_config(config_path)
    if store_dir is not None:
        config.store_dir = store_dir
    if providers is not None:
        config.providers = [p.strip() for p in providers.split(",") if p.strip()]
    if corpus is not None:
        config.local_corpus = corpus
    return config


def _service(ctx) -> SearchService:
    if "service" not in ctx.obj:
        ctx.obj["service"] = build_service(ctx.obj["config"])
    return ctx.obj["service"]


def _cli_user(service: SearchService):
    user = service.store.find_user_by_name("cli")
    return user or service.store.create_user("cli")


def _emit(ctx, payload: dict, table: str) -> None:
    if ctx.obj["format"] == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(table)


@click.group(context_settings={"auto_envvar_prefix": "PROJSEARCH"})
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="JSON configuration file.")
@click.option("--store-dir", default=None, help="Store directory (persistent state).")
@click.option("--providers", default=None, help="Comma list: local,arxiv,pubmed.")
@click.option("--corpus", default=None, help="Local corpus TSV file.")
@click.option("--format", "output_format", type=click.Choice(["table", "json"]),
              default="table", help="Output style: human table or stable JSON.")
@click.option("--seed", type=int, default=0, help="Seed for seeded operations.")
@click.pass_context
def main(ctx, config_path, store_dir, providers, corpus, output_format, seed):
    """Project-based meta-search for research papers."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = _build_config(config_path, store_dir, providers, corpus)
    ctx.obj["format"] = output_format
    ctx.obj["seed"] = seed


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=None)
@click.pass_context
def serve(ctx, host, port):
    """Run the HTTP API."""
    import uvicorn

    config = ctx.obj["config"]
    app = create_app(service=_service(ctx), config=config)
    uvicorn.run(app, host=host, port=port or config.port)


@main.command()
@click.argument("query")
@click.option("--mode", type=click.Choice(["quick", "base", "project", "lifetime", "random"]),
              default="quick")
@click.option("--project", "project_id", default=None)
@click.option("--limit", type=int, default=None)
@click.option("--page-size", type=int, default=None)
@click.pass_context
def search(ctx, query, mode, project_id, limit, page_size):
    """Run one search and print the ranked results."""

    def go():
        service = _service(ctx)
        user = _cli_user(service)
        return service.search(
            user.user_id, query, mode=mode, project_id=project_id,
            limit=limit, seed=ctx.obj["seed"], page_size=page_size,
        )

    response = _run(ctx, go)
    lines = [
        f"query {response['query_id']}  mode={response['mode']}"
        f"  total={response['total']}" + ("  [partial]" if response["partial"] else "")
    ]
    for row in response["results"]:
        title = row["title"][:60]
        lines.append(
            f"{row['rank']:>3}. [{row['provider']}:{row['doc_id']}]"
            f" score={row['score']:+.4f}  {title}"
        )
    _emit(ctx, response, "\n".join(lines))


@main.command()
@click.argument("query_id")
@click.argument("doc_ref")
@click.argument("label", type=click.Choice(["relevant", "irrelevant"]))
@click.pass_context
def label(ctx, query_id, doc_ref, label):
    """Label one result: DOC_REF is provider:doc_id."""
    if ":" not in doc_ref:
        _fail("doc reference must be provider:doc_id", 1)
    provider, doc_id = doc_ref.split(":", 1)

    def go():
        return _service(ctx).label(query_id, provider, doc_id, label)

    response = _run(ctx, go)
    _emit(ctx, response, f"labeled {doc_ref} {label} on {query_id}")


@main.command()
@click.argument("query_id")
@click.pass_context
def suggest(ctx, query_id):
    """Print next-query suggestions for a labeled query."""

    def go():
        service = _service(ctx)
        try:
            return [s.__dict__ for s in service.suggestions(query_id)]
        except Exception as exc:  # NoLabelsYet is a plain ValueError
            raise exc

    suggestions = _run(ctx, go)
    if not suggestions:
        _emit(ctx, {"suggestions": []}, "no suggestions (not enough signal)")
        return
    lines = ["direction  z-score  term -> suggested query"]
    for s in suggestions:
        lines.append(
            f"{s['direction']:<9}  {s['z_score']:6.2f}  {s['term']} -> {s['suggested_query']}"
        )
    _emit(ctx, {"suggestions": suggestions}, "\n".join(lines))


@main.group()
def project():
    """List or create projects."""


@project.command("list")
@click.pass_context
def project_list(ctx):
    def go():
        service = _service(ctx)
        user = _cli_user(service)
        return service.store.list_projects(user.user_id)

    projects = _run(ctx, go)
    payload = {
        "projects": [
            {"project_id": p.project_id, "name": p.name, **p.statistics} for p in projects
        ]
    }
    lines = [
        f"{p.project_id:<6} {p.name:<30} queries={p.query_count}"
        f" labels={p.relevant_count}+/{p.irrelevant_count}-"
        for p in projects
    ] or ["no projects"]
    _emit(ctx, payload, "\n".join(lines))


@project.command("create")
@click.argument("name")
@click.pass_context
def project_create(ctx, name):
    def go():
        service = _service(ctx)
        user = _cli_user(service)
        return service.store.create_project(user.user_id, name)

    created = _run(ctx, go)
    _emit(
        ctx,
        {"project_id": created.project_id, "name": created.name},
        f"created {created.project_id}: {created.name}",
    )


@main.group()
def simulate():
    """Run the drift or suggestion experiment."""


def _write_reports(report, out_prefix: str | None) -> None:
    if not out_prefix:
        return
    prefix = Path(out_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.json").write_text(report.to_json() + "\n", "utf-8")
    Path(f"{prefix}.txt").write_text(report.to_table() + "\n", "utf-8")
    rows = "\n".join("\t".join(str(v) for v in row) for row in report.plot_rows())
    Path(f"{prefix}.tsv").write_text(rows + "\n", "utf-8")


@simulate.command("drift")
@click.option("--seeds", type=int, default=20, help="Number of seeds.")
@click.option("--modes", default=",".join(DRIFT_MODES))
@click.option("--docs-per-topic", type=int, default=300)
@click.option("--noise", type=float, default=0.0)
@click.option("--out", "out_prefix", default=None, help="Report file prefix.")
@click.pass_context
def simulate_drift(ctx, seeds, modes, docs_per_topic, noise, out_prefix):
    def go():
        return run_drift_experiment(
            modes=[m.strip() for m in modes.split(",") if m.strip()],
            seeds=list(range(ctx.obj["seed"], ctx.obj["seed"] + seeds)),
            config=DriftConfig(docs_per_topic=docs_per_topic, noise=noise),
        )

    report = _run(ctx, go)
    _write_reports(report, out_prefix)
    _emit(ctx, report.as_dict(), report.to_table())


@simulate.command("suggestion")
@click.option("--seeds", type=int, default=20)
@click.option("--policies", default=",".join(SUGGESTION_POLICIES))
@click.option("--threshold", type=float, default=50.0)
@click.option("--noise", type=float, default=0.0)
@click.option("--out", "out_prefix", default=None)
@click.pass_context
def simulate_suggestion(ctx, seeds, policies, threshold, noise, out_prefix):
    def go():
        return run_suggestion_experiment(
            policies=[p.strip() for p in policies.split(",") if p.strip()],
            seeds=list(range(ctx.obj["seed"], ctx.obj["seed"] + seeds)),
            config=SuggestionSimConfig(threshold=threshold, noise=noise),
        )

    report = _run(ctx, go)
    _write_reports(report, out_prefix)
    _emit(ctx, report.as_dict(), report.to_table())


@main.command("export-log")
@click.option("--user", "user_id", default=None)
@click.option("--project", "project_id", default=None)
@click.option("--since", type=float, default=None)
@click.option("--until", type=float, default=None)
@click.pass_context
def export_log(ctx, user_id, project_id, since, until):
    """Print the action log, one JSON event per line."""

    def go():
        return _service(ctx).store.export_log(
            user_id=user_id, project_id=project_id, since=since, until=until
        )

    for event in _run(ctx, go):
        click.echo(json.dumps(event, sort_keys=True))


if __name__ == "__main__":
    main()
