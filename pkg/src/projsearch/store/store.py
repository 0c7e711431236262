"""Users, projects, query records, labels, and the append-only action log.

Persistence is a single directory: `events.jsonl` (one JSON event per
line, the source of truth) plus an optional `snapshot.json` written by
`compact()` so reloads can skip already-snapshotted events.  All
mutations funnel through one writer lock; reads copy under the lock.
"""

from __future__ import annotations

import json
import random
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from projsearch.providers.base import AbstractDoc, DocKey
from projsearch.relevance.scoring import HistoryEntry, QueryProfile
from projsearch.relevance.textproc import build_term_vector

MODE_BASE = "base"
MODE_RANDOM = "random"
MODE_PROJECT = "project"
MODE_LIFETIME = "lifetime"
HISTORY_MODES = (MODE_BASE, MODE_RANDOM, MODE_PROJECT, MODE_LIFETIME)

LABELS = ("relevant", "irrelevant")

EVENTS_FILE = "events.jsonl"
SNAPSHOT_FILE = "snapshot.json"


class NotFound(KeyError):
    pass


class Conflict(ValueError):
    pass


class ValidationError(ValueError):
    pass


def random_sample_size(query_index: int) -> int:
    """Sample-size schedule for the random history mode: one prior query
    for a user's 2nd-3rd searches, two for the 4th-6th and beyond."""
    if query_index <= 1:
        return 0
    if query_index <= 3:
        return 1
    return 2


@dataclass
class User:
    user_id: str
    display_name: str
    created_at: float
    token: str


@dataclass
class Project:
    project_id: str
    owner: str
    name: str
    created_at: float
    query_count: int = 0
    relevant_count: int = 0
    irrelevant_count: int = 0

    @property
    def statistics(self) -> dict:
        return {
            "query_count": self.query_count,
            "relevant_count": self.relevant_count,
            "irrelevant_count": self.irrelevant_count,
        }


@dataclass
class QueryRecord:
    query_id: str
    user_id: str
    project_id: str | None
    query_text: str
    atom_texts: tuple[str, ...]
    has_negation: bool
    mode: str
    result_keys: tuple[DocKey, ...]
    labels: dict[DocKey, str] = field(default_factory=dict)
    issued_at: float = 0.0
    session_index: int = 0
    project_index: int = 0


class ProjectStore:
    def __init__(self, root: str | Path | None = None, clock: Callable[[], float] = time.time):
        self._root = Path(root) if root is not None else None
        self._clock = clock
        self._lock = threading.RLock()
        self._users: dict[str, User] = {}
        self._projects: dict[str, Project] = {}
        self._queries: dict[str, QueryRecord] = {}
        self._docs: dict[DocKey, tuple[str, str]] = {}
        self._events: list[dict] = []
        self._counters = {"user": 0, "project": 0, "query": 0}
        self._session_counts: dict[str, int] = {}
        self._project_counts: dict[str, int] = {}
        self._events_fh = None
        if self._root is not None:
            self._root.mkdir(parents=True, exist_ok=True)
            self._load()
            self._events_fh = (self._root / EVENTS_FILE).open("a", encoding="utf-8")

    # -- persistence ------------------------------------------------------

    def _load(self) -> None:
        snapshot_path = self._root / SNAPSHOT_FILE
        applied_through = 0
        if snapshot_path.exists():
            snap = json.loads(snapshot_path.read_text("utf-8"))
            applied_through = snap["seq"]
            for ev in snap["events"]:
                self._apply(ev)
                self._events.append(ev)
        events_path = self._root / EVENTS_FILE
        if events_path.exists():
            for line in events_path.read_text("utf-8").splitlines():
                if not line.strip():
                    continue
                ev = json.loads(line)
                if ev["seq"] <= applied_through:
                    continue
                self._apply(ev)
                self._events.append(ev)

    def compact(self) -> None:
        """Write the full event history as a snapshot document."""
        if self._root is None:
            return
        with self._lock:
            seq = self._events[-1]["seq"] if self._events else 0
            payload = {"seq": seq, "events": self._events}
            (self._root / SNAPSHOT_FILE).write_text(
                json.dumps(payload, indent=1, sort_keys=True), "utf-8"
            )

    def close(self) -> None:
        if self._events_fh is not None:
            self._events_fh.close()
            self._events_fh = None

    def _emit(self, ev_type: str, **payload) -> dict:
        event = {
            "seq": len(self._events) + 1,
            "ts": self._clock(),
            "type": ev_type,
            **payload,
        }
        self._apply(event)
        self._events.append(event)
        if self._events_fh is not None:
            self._events_fh.write(json.dumps(event, sort_keys=True) + "\n")
            self._events_fh.flush()
        return event

    # -- state transitions (shared by live mutation and log replay) -------

    def _apply(self, ev: dict) -> None:
        ev_type = ev["type"]
        if ev_type == "user_created":
            self._users[ev["user_id"]] = User(
                user_id=ev["user_id"],
                display_name=ev["display_name"],
                created_at=ev["ts"],
                token=ev["token"],
            )
            self._counters["user"] += 1
        elif ev_type == "project_created":
            self._projects[ev["project_id"]] = Project(
                project_id=ev["project_id"],
                owner=ev["user_id"],
                name=ev["name"],
                created_at=ev["ts"],
            )
            self._counters["project"] += 1
        elif ev_type == "search":
            keys = []
            for provider, doc_id, title, abstract in ev["results"]:
                key = (provider, doc_id)
                keys.append(key)
                self._docs.setdefault(key, (title, abstract))
            session_index = self._session_counts.get(ev["user_id"], 0) + 1
            self._session_counts[ev["user_id"]] = session_index
            project_index = 0
            if ev["project_id"] is not None:
                project_index = self._project_counts.get(ev["project_id"], 0) + 1
                self._project_counts[ev["project_id"]] = project_index
                self._projects[ev["project_id"]].query_count += 1
            self._queries[ev["query_id"]] = QueryRecord(
                query_id=ev["query_id"],
                user_id=ev["user_id"],
                project_id=ev["project_id"],
                query_text=ev["query_text"],
                atom_texts=tuple(ev["atom_texts"]),
                has_negation=ev["has_negation"],
                mode=ev["mode"],
                result_keys=tuple(keys),
                issued_at=ev["ts"],
                session_index=session_index,
                project_index=project_index,
            )
            self._counters["query"] += 1
        elif ev_type == "label":
            record = self._queries[ev["query_id"]]
            key = (ev["doc"][0], ev["doc"][1])
            previous = record.labels.get(key)
            record.labels[key] = ev["label"]
            if record.project_id is not None and previous != ev["label"]:
                project = self._projects[record.project_id]
                if previous == "relevant":
                    project.relevant_count -= 1
                elif previous == "irrelevant":
                    project.irrelevant_count -= 1
                if ev["label"] == "relevant":
                    project.relevant_count += 1
                else:
                    project.irrelevant_count += 1
        # page_view / suggestion_shown / suggestion_accepted only log

    # -- CRUD --------------------------------------------------------------

    def create_user(self, display_name: str, token: str | None = None) -> User:
        if not display_name.strip():
            raise ValidationError("display_name is empty")
        with self._lock:
            user_id = f"u{self._counters['user'] + 1}"
            token = token or f"tok-{user_id}-{random.getrandbits(64):016x}"
            self._emit("user_created", user_id=user_id, display_name=display_name, token=token)
            return self._users[user_id]

    def create_project(self, user_id: str, name: str) -> Project:
        if not name.strip():
            raise ValidationError("project name is empty")
        with self._lock:
            self._require_user(user_id)
            if any(p.owner == user_id and p.name == name for p in self._projects.values()):
                raise Conflict(f"project {name!r} already exists for {user_id}")
            project_id = f"p{self._counters['project'] + 1}"
            self._emit("project_created", project_id=project_id, user_id=user_id, name=name)
            return self._projects[project_id]

    def record_query(
        self,
        user_id: str,
        query_text: str,
        atom_texts: Sequence[str],
        has_negation: bool,
        results: Sequence[AbstractDoc],
        mode: str = MODE_BASE,
        project_id: str | None = None,
    ) -> QueryRecord:
        with self._lock:
            self._require_user(user_id)
            if project_id is not None:
                self._require_project(project_id)
            event = self._emit(
                "search",
                query_id=f"q{self._counters['query'] + 1}",
                user_id=user_id,
                project_id=project_id,
                query_text=query_text,
                atom_texts=list(atom_texts),
                has_negation=has_negation,
                mode=mode,
                results=[[d.provider, d.doc_id, d.title, d.abstract_text] for d in results],
            )
            return self._queries[event["query_id"]]

    def record_label(self, query_id: str, doc_key: DocKey, label: str) -> QueryRecord:
        if label not in LABELS:
            raise ValidationError(f"label must be one of {LABELS}")
        with self._lock:
            record = self._require_query(query_id)
            key = (doc_key[0], doc_key[1])
            if key not in record.result_keys:
                raise ValidationError(f"doc {key} is not a result of {query_id}")
            self._emit(
                "label",
                query_id=query_id,
                user_id=record.user_id,
                project_id=record.project_id,
                doc=list(key),
                label=label,
            )
            return record

    def record_page_view(self, user_id: str, page: str) -> None:
        with self._lock:
            self._require_user(user_id)
            self._emit("page_view", user_id=user_id, page=page)

    def record_suggestions_shown(self, query_id: str, terms: Sequence[str]) -> None:
        with self._lock:
            record = self._require_query(query_id)
            self._emit(
                "suggestion_shown",
                query_id=query_id,
                user_id=record.user_id,
                project_id=record.project_id,
                terms=list(terms),
            )

    def record_suggestion_accepted(self, query_id: str, term: str, direction: str) -> None:
        with self._lock:
            record = self._require_query(query_id)
            self._emit(
                "suggestion_accepted",
                query_id=query_id,
                user_id=record.user_id,
                project_id=record.project_id,
                term=term,
                direction=direction,
            )

    # -- lookups ------------------------------------------------------------

    def _require_user(self, user_id: str) -> User:
        if user_id not in self._users:
            raise NotFound(f"user {user_id}")
        return self._users[user_id]

    def _require_project(self, project_id: str) -> Project:
        if project_id not in self._projects:
            raise NotFound(f"project {project_id}")
        return self._projects[project_id]

    def _require_query(self, query_id: str) -> QueryRecord:
        if query_id not in self._queries:
            raise NotFound(f"query {query_id}")
        return self._queries[query_id]

    def get_user(self, user_id: str) -> User:
        with self._lock:
            return self._require_user(user_id)

    def find_user_by_token(self, token: str) -> User | None:
        with self._lock:
            for user in self._users.values():
                if user.token == token:
                    return user
            return None

    def find_user_by_name(self, display_name: str) -> User | None:
        with self._lock:
            for user in self._users.values():
                if user.display_name == display_name:
                    return user
            return None

    def get_project(self, project_id: str) -> Project:
        with self._lock:
            return self._require_project(project_id)

    def list_projects(self, user_id: str) -> list[Project]:
        with self._lock:
            self._require_user(user_id)
            return sorted(
                (p for p in self._projects.values() if p.owner == user_id),
                key=lambda p: p.project_id,
            )

    def get_query(self, query_id: str) -> QueryRecord:
        with self._lock:
            return self._require_query(query_id)

    def list_queries(self, user_id: str | None = None, project_id: str | None = None) -> list[QueryRecord]:
        with self._lock:
            records = sorted(self._queries.values(), key=lambda r: int(r.query_id[1:]))
            if user_id is not None:
                records = [r for r in records if r.user_id == user_id]
            if project_id is not None:
                records = [r for r in records if r.project_id == project_id]
            return records

    def doc_content(self, key: DocKey) -> tuple[str, str]:
        with self._lock:
            if key not in self._docs:
                raise NotFound(f"doc {key}")
            return self._docs[key]

    def next_session_index(self, user_id: str) -> int:
        """1-based position the user's next search will take in their session."""
        with self._lock:
            self._require_user(user_id)
            return self._session_counts.get(user_id, 0) + 1

    def next_project_index(self, project_id: str) -> int:
        with self._lock:
            self._require_project(project_id)
            return self._project_counts.get(project_id, 0) + 1

    # -- history ------------------------------------------------------------

    def _to_history_entry(self, record: QueryRecord) -> HistoryEntry:
        relevant, irrelevant = [], []
        for key in record.result_keys:
            label = record.labels.get(key)
            if label is None:
                continue
            title, abstract = self._docs[key]
            vec = build_term_vector(f"{title} {abstract}")
            (relevant if label == "relevant" else irrelevant).append(vec)
        return HistoryEntry(
            profile=QueryProfile(
                atom_texts=record.atom_texts, has_negation=record.has_negation
            ),
            relevant_docs=tuple(relevant),
            irrelevant_docs=tuple(irrelevant),
            query_text=record.query_text,
        )

    def history(
        self,
        user_id: str,
        project_id: str | None,
        mode: str,
        query_index: int,
        seed: int = 0,
    ) -> list[HistoryEntry]:
        """Prior queries feeding personalization, per mode.

        `query_index` is the 1-based position of the upcoming query in the
        user's session; the random mode samples without replacement and is
        deterministic under `seed`.
        """
        if mode not in HISTORY_MODES:
            raise ValidationError(f"unknown history mode {mode!r}")
        if query_index < 1:
            raise ValidationError("query_index is 1-based")
        with self._lock:
            self._require_user(user_id)
            if mode == MODE_BASE:
                return []
            if mode == MODE_PROJECT:
                if project_id is None:
                    return []
                self._require_project(project_id)
                priors = self.list_queries(user_id=user_id, project_id=project_id)
            else:
                priors = self.list_queries(user_id=user_id)
            if mode == MODE_RANDOM:
                size = min(random_sample_size(query_index), len(priors))
                if size == 0:
                    return []
                rng = random.Random(seed)
                priors = sorted(rng.sample(priors, size), key=lambda r: int(r.query_id[1:]))
            return [self._to_history_entry(r) for r in priors]

    # -- action log -----------------------------------------------------------

    def export_log(
        self,
        user_id: str | None = None,
        project_id: str | None = None,
        since: float | None = None,
        until: float | None = None,
    ) -> list[dict]:
        """Ordered action events, optionally filtered; append-only upstream."""
        with self._lock:
            out = []
            for ev in self._events:
                if user_id is not None and ev.get("user_id") != user_id:
                    continue
                if project_id is not None and ev.get("project_id") != project_id:
                    continue
                if since is not None and ev["ts"] < since:
                    continue
                if until is not None and ev["ts"] > until:
                    continue
                out.append(dict(ev))
            return out
