import itertools
import json

import pytest

from projsearch.providers import AbstractDoc
from projsearch.store import (
    Conflict,
    MODE_BASE,
    MODE_LIFETIME,
    MODE_PROJECT,
    MODE_RANDOM,
    NotFound,
    ProjectStore,
    ValidationError,
    random_sample_size,
)


def make_clock():
    counter = itertools.count(start=1)
    return lambda: float(next(counter))


def doc(doc_id, title="t", abstract="gold text"):
    return AbstractDoc(doc_id=doc_id, provider="local", title=title, abstract_text=abstract)


def searched(store, user, n_docs=3, project_id=None, text="gold", prefix="d"):
    docs = [doc(f"{prefix}{i}") for i in range(n_docs)]
    return store.record_query(
        user.user_id, text, (text,), False, docs, mode=MODE_BASE, project_id=project_id
    )


# -- CRUD ------------------------------------------------------------------


def test_create_user_and_project():
    store = ProjectStore(clock=make_clock())
    user = store.create_user("ada")
    assert user.user_id == "u1" and user.token
    project = store.create_project(user.user_id, "alpha")
    assert project.project_id == "p1"
    assert store.list_projects(user.user_id) == [project]


def test_duplicate_project_name_conflicts():
    store = ProjectStore(clock=make_clock())
    user = store.create_user("ada")
    store.create_project(user.user_id, "alpha")
    with pytest.raises(Conflict):
        store.create_project(user.user_id, "alpha")
    other = store.create_user("bob")
    store.create_project(other.user_id, "alpha")  # same name, different owner


def test_validation_and_not_found():
    store = ProjectStore(clock=make_clock())
    with pytest.raises(ValidationError):
        store.create_user("   ")
    with pytest.raises(NotFound):
        store.create_project("u404", "x")
    with pytest.raises(NotFound):
        store.get_query("q404")


def test_label_idempotent_and_last_write_wins():
    store = ProjectStore(clock=make_clock())
    user = store.create_user("ada")
    record = searched(store, user)
    store.record_label(record.query_id, ("local", "d0"), "relevant")
    store.record_label(record.query_id, ("local", "d0"), "relevant")
    assert record.labels == {("local", "d0"): "relevant"}
    store.record_label(record.query_id, ("local", "d0"), "irrelevant")
    assert record.labels == {("local", "d0"): "irrelevant"}


def test_label_requires_existing_result():
    store = ProjectStore(clock=make_clock())
    user = store.create_user("ada")
    record = searched(store, user)
    with pytest.raises(ValidationError):
        store.record_label(record.query_id, ("local", "nope"), "relevant")
    with pytest.raises(ValidationError):
        store.record_label(record.query_id, ("local", "d0"), "maybe")


def test_project_statistics_match_recount():
    store = ProjectStore(clock=make_clock())
    user = store.create_user("ada")
    project = store.create_project(user.user_id, "alpha")
    for q in range(3):
        record = searched(store, user, n_docs=10, project_id=project.project_id, prefix=f"q{q}d")
        for i in range(10):
            label = "relevant" if i % 2 == 0 else "irrelevant"
            store.record_label(record.query_id, ("local", f"q{q}d{i}"), label)
    stats = store.get_project(project.project_id).statistics
    assert stats["query_count"] == 3
    # recount from the records themselves
    records = store.list_queries(project_id=project.project_id)
    relevant = sum(1 for r in records for v in r.labels.values() if v == "relevant")
    irrelevant = sum(1 for r in records for v in r.labels.values() if v == "irrelevant")
    assert stats["relevant_count"] == relevant == 15
    assert stats["irrelevant_count"] == irrelevant == 15


# -- history modes -------------------------------------------------------------


def seeded_session(store):
    user = store.create_user("ada")
    pa = store.create_project(user.user_id, "a")
    pb = store.create_project(user.user_id, "b")
    for i in range(3):
        record = searched(store, user, n_docs=2, project_id=pa.project_id, prefix=f"a{i}")
        store.record_label(record.query_id, ("local", f"a{i}0"), "relevant")
    return user, pa, pb


def test_history_base_is_empty():
    store = ProjectStore(clock=make_clock())
    user, pa, _ = seeded_session(store)
    assert store.history(user.user_id, pa.project_id, MODE_BASE, 4) == []


def test_history_project_scopes_to_project():
    store = ProjectStore(clock=make_clock())
    user, pa, pb = seeded_session(store)
    in_a = store.history(user.user_id, pa.project_id, MODE_PROJECT, 4)
    assert len(in_a) == 3
    # a fresh project sees none of project a's history
    assert store.history(user.user_id, pb.project_id, MODE_PROJECT, 4) == []


def test_history_lifetime_spans_projects():
    store = ProjectStore(clock=make_clock())
    user, pa, pb = seeded_session(store)
    searched(store, user, n_docs=2, project_id=pb.project_id, prefix="b0")
    lifetime = store.history(user.user_id, None, MODE_LIFETIME, 5)
    assert len(lifetime) == 4
    texts = [e.query_text for e in lifetime]
    assert texts == sorted(texts, key=lambda _: 0)  # insertion order preserved


def test_history_project_subset_of_lifetime():
    store = ProjectStore(clock=make_clock())
    user, pa, pb = seeded_session(store)
    project_entries = {e.query_text for e in store.history(user.user_id, pa.project_id, MODE_PROJECT, 4)}
    lifetime_entries = {e.query_text for e in store.history(user.user_id, None, MODE_LIFETIME, 4)}
    assert project_entries <= lifetime_entries


def test_history_entry_vectors_reflect_labels():
    store = ProjectStore(clock=make_clock())
    user = store.create_user("ada")
    project = store.create_project(user.user_id, "alpha")
    docs = [doc("d0", abstract="gold gold nano"), doc("d1", abstract="silver wire")]
    record = store.record_query(
        user.user_id, "gold", ("gold",), False, docs, mode=MODE_PROJECT, project_id=project.project_id
    )
    store.record_label(record.query_id, ("local", "d0"), "relevant")
    store.record_label(record.query_id, ("local", "d1"), "irrelevant")
    (entry,) = store.history(user.user_id, project.project_id, MODE_PROJECT, 2)
    assert entry.relevant_docs[0].weights == {"gold": 2, "nano": 1}  # title "t" is a stop-word
    assert entry.irrelevant_docs[0].weights == {"silver": 1, "wire": 1}
    assert entry.profile.atom_texts == ("gold",)


def test_random_sample_schedule():
    assert random_sample_size(1) == 0
    assert random_sample_size(2) == random_sample_size(3) == 1
    assert random_sample_size(4) == random_sample_size(5) == random_sample_size(6) == 2
    assert random_sample_size(9) == 2


def test_history_random_sizes_and_determinism():
    store = ProjectStore(clock=make_clock())
    user = store.create_user("ada")
    for i in range(4):
        searched(store, user, prefix=f"s{i}")
    take2 = store.history(user.user_id, None, MODE_RANDOM, 5, seed=99)
    assert len(take2) == 2
    again = store.history(user.user_id, None, MODE_RANDOM, 5, seed=99)
    assert [e.query_text for e in take2] == [e.query_text for e in again]
    take1 = store.history(user.user_id, None, MODE_RANDOM, 2, seed=99)
    assert len(take1) == 1
    assert store.history(user.user_id, None, MODE_RANDOM, 1, seed=99) == []


def test_history_random_capped_by_available():
    store = ProjectStore(clock=make_clock())
    user = store.create_user("ada")
    searched(store, user)
    assert len(store.history(user.user_id, None, MODE_RANDOM, 6, seed=1)) == 1


def test_history_validates_input():
    store = ProjectStore(clock=make_clock())
    user = store.create_user("ada")
    with pytest.raises(ValidationError):
        store.history(user.user_id, None, "bogus", 1)
    with pytest.raises(ValidationError):
        store.history(user.user_id, None, MODE_BASE, 0)
    with pytest.raises(NotFound):
        store.history("u404", None, MODE_BASE, 1)


def test_session_and_project_indices():
    store = ProjectStore(clock=make_clock())
    user = store.create_user("ada")
    project = store.create_project(user.user_id, "alpha")
    assert store.next_session_index(user.user_id) == 1
    searched(store, user)
    assert store.next_session_index(user.user_id) == 2
    assert store.next_project_index(project.project_id) == 1
    searched(store, user, project_id=project.project_id, prefix="p")
    assert store.next_project_index(project.project_id) == 2
    assert store.next_session_index(user.user_id) == 3


# -- persistence ---------------------------------------------------------------


def populate(store):
    user = store.create_user("ada", token="tok-fixed")
    project = store.create_project(user.user_id, "alpha")
    record = searched(store, user, n_docs=4, project_id=project.project_id)
    store.record_label(record.query_id, ("local", "d0"), "relevant")
    store.record_label(record.query_id, ("local", "d1"), "irrelevant")
    store.record_page_view(user.user_id, "project")
    store.record_suggestions_shown(record.query_id, ["nano"])
    store.record_suggestion_accepted(record.query_id, "nano", "add")
    return user, project, record


def snapshot_state(store):
    return {
        "users": {u: (v.display_name, v.token) for u, v in store._users.items()},
        "projects": {
            p: (v.owner, v.name, v.query_count, v.relevant_count, v.irrelevant_count)
            for p, v in store._projects.items()
        },
        "queries": {
            q: (r.user_id, r.project_id, r.query_text, r.result_keys, sorted(r.labels.items()))
            for q, r in store._queries.items()
        },
        "docs": dict(store._docs),
    }


def test_round_trip_reload_identical(tmp_path):
    store = ProjectStore(tmp_path / "s", clock=make_clock())
    populate(store)
    before = snapshot_state(store)
    store.close()

    reloaded = ProjectStore(tmp_path / "s", clock=make_clock())
    assert snapshot_state(reloaded) == before
    # and the reloaded store keeps appending correctly
    user = reloaded.get_user("u1")
    searched(reloaded, user, prefix="x")
    assert reloaded.next_session_index(user.user_id) == 3


def test_compacted_snapshot_reload(tmp_path):
    store = ProjectStore(tmp_path / "s", clock=make_clock())
    populate(store)
    store.compact()
    before = snapshot_state(store)
    store.close()
    assert (tmp_path / "s" / "snapshot.json").exists()
    reloaded = ProjectStore(tmp_path / "s", clock=make_clock())
    assert snapshot_state(reloaded) == before


def test_event_log_is_line_delimited_json(tmp_path):
    store = ProjectStore(tmp_path / "s", clock=make_clock())
    populate(store)
    store.close()
    lines = (tmp_path / "s" / "events.jsonl").read_text("utf-8").splitlines()
    events = [json.loads(line) for line in lines]
    assert [e["seq"] for e in events] == list(range(1, len(events) + 1))
    assert events[0]["type"] == "user_created"


def test_export_log_order_and_filters():
    store = ProjectStore(clock=make_clock())
    user, project, record = populate(store)
    other = store.create_user("bob")
    store.record_page_view(other.user_id, "home")

    events = store.export_log()
    assert [e["seq"] for e in events] == sorted(e["seq"] for e in events)
    search_plus_labels = [e for e in events if e["type"] in ("search", "label")]
    assert len(search_plus_labels) == 3  # one search, two labels

    only_ada = store.export_log(user_id=user.user_id)
    assert all(e["user_id"] == user.user_id for e in only_ada)
    only_project = store.export_log(project_id=project.project_id)
    assert all(e["project_id"] == project.project_id for e in only_project)
    windowed = store.export_log(since=2.0, until=3.0)
    assert all(2.0 <= e["ts"] <= 3.0 for e in windowed)
    assert store.export_log(since=1e9) == []


def test_export_log_append_only_superset():
    store = ProjectStore(clock=make_clock())
    user, project, record = populate(store)
    first = store.export_log()
    store.record_page_view(user.user_id, "again")
    second = store.export_log()
    assert second[: len(first)] == first
    assert len(second) == len(first) + 1


def test_replay_reconstructs_statistics(tmp_path):
    store = ProjectStore(tmp_path / "s", clock=make_clock())
    _, project, _ = populate(store)
    stats = store.get_project(project.project_id).statistics
    store.close()
    replayed = ProjectStore(tmp_path / "s", clock=make_clock())
    assert replayed.get_project(project.project_id).statistics == stats
    events = replayed.export_log()
    label_events = [e for e in events if e["type"] == "label"]
    # recount from the raw event stream: last write per (query, doc) wins
    final = {}
    for e in label_events:
        final[(e["query_id"], tuple(e["doc"]))] = e["label"]
    relevant = sum(1 for v in final.values() if v == "relevant")
    assert relevant == stats["relevant_count"]
