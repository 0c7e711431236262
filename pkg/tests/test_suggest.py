import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_corpus
from projsearch.providers import Gateway, LocalProvider
from projsearch.query import evaluate, normalize, parse, render_ast
from projsearch.relevance import TermVector, build_term_vector
from projsearch.suggest import (
    DIRECTION_ADD,
    DIRECTION_REMOVE,
    apply_suggestion,
    joined_vector,
    suggest_terms,
)


def test_joined_vector_examples():
    out = joined_vector([TermVector({"a": 1}), TermVector({"a": 2, "b": 1})])
    assert out.weights == {"a": 3, "b": 1}
    assert joined_vector([]).weights == {}


@settings(max_examples=100, deadline=None)
@given(
    st.lists(
        st.dictionaries(st.sampled_from("abcdef"), st.integers(1, 9), max_size=5),
        max_size=10,
    )
)
def test_joined_vector_matches_fold(dicts):
    expected = {}
    for d in dicts:
        for t, c in d.items():
            expected[t] = expected.get(t, 0) + c
    assert joined_vector([TermVector(d) for d in dicts]).weights == expected


def planted_relevant_vectors():
    # "plasmonic" appears five times in each of four abstracts; every other
    # term at most once per abstract
    vectors = []
    fillers = [
        ["alpha", "beta", "gamma", "delta"],
        ["epsilon", "zeta", "eta", "theta"],
        ["iota", "kappa", "lam", "mu"],
        ["nu", "xi", "omicron", "pi"],
    ]
    for extra in fillers:
        weights = {"plasmonic": 5}
        weights.update({t: 1 for t in extra})
        vectors.append(TermVector(weights))
    return vectors


def test_planted_term_is_top_add_suggestion():
    query = parse("medical nanorobotics and gold")
    out = suggest_terms(query, planted_relevant_vectors(), [])
    assert out, "expected at least one suggestion"
    top = out[0]
    assert top.term == "plasmonic"
    assert top.direction == DIRECTION_ADD
    assert top.z_score >= 1.0
    assert top.suggested_query == "medical nanorobotics and gold and plasmonic"


def test_remove_side_symmetry_with_papers_form():
    query = parse("medical nanorobotics and gold")
    out = suggest_terms(query, [], planted_relevant_vectors())
    assert out[0].direction == DIRECTION_REMOVE
    assert out[0].suggested_query == "medical nanorobotics and gold and not plasmonic"


def test_swapping_label_sets_swaps_directions_term_for_term():
    query = parse("a and b")
    rel = planted_relevant_vectors()
    irrel = [TermVector({"contaminant": 6, "one": 1, "two": 1, "three": 1, "four": 1})]
    forward = suggest_terms(query, rel, irrel)
    swapped = suggest_terms(query, irrel, rel)
    fwd_add = [s.term for s in forward if s.direction == DIRECTION_ADD]
    fwd_rem = [s.term for s in forward if s.direction == DIRECTION_REMOVE]
    swp_add = [s.term for s in swapped if s.direction == DIRECTION_ADD]
    swp_rem = [s.term for s in swapped if s.direction == DIRECTION_REMOVE]
    assert fwd_add == swp_rem
    assert fwd_rem == swp_add


def test_equal_frequencies_yield_no_suggestions():
    flat = [TermVector({"one": 2, "two": 2, "three": 2})]
    assert suggest_terms(parse("a"), flat, flat) == []


def test_empty_label_sets_yield_no_suggestions():
    assert suggest_terms(parse("a"), [], []) == []


def test_existing_query_atoms_and_stopwords_excluded():
    vectors = [TermVector({"gold": 9, "the": 9, "fresh": 9, "one": 1, "two": 1, "three": 1})]
    out = suggest_terms(parse("gold and b"), vectors, [])
    terms = [s.term for s in out]
    assert "gold" not in terms
    assert "the" not in terms
    assert "fresh" in terms


def test_max_per_side_cap():
    vectors = [
        TermVector({"aa": 9, "bb": 9, "cc": 9, "dd": 9, "ee": 9, "ff": 9, "x1": 1, "x2": 1,
                    "x3": 1, "x4": 1, "x5": 1, "x6": 1, "x7": 1, "x8": 1})
    ]
    out = suggest_terms(parse("q"), vectors, [], max_per_side=2)
    assert len(out) == 2


def test_zscore_matches_two_pass_oracle():
    rng = random.Random(41)
    for _ in range(50):
        weights = {f"t{i}": rng.randint(1, 12) for i in range(rng.randint(3, 14))}
        vec = TermVector(weights)
        out = suggest_terms(parse("unrelatedquery"), [vec], [])
        freqs = list(weights.values())
        mean = sum(freqs) / len(freqs)
        sd = (sum((f - mean) ** 2 for f in freqs) / len(freqs)) ** 0.5
        if sd == 0:
            assert out == []
            continue
        expected = {t: (c - mean) / sd for t, c in weights.items() if (c - mean) / sd >= 1}
        top5 = dict(sorted(expected.items(), key=lambda kv: (-kv[1], kv[0]))[:5])
        got = {s.term: s.z_score for s in out}
        assert set(got) == set(top5)
        for term, z in got.items():
            assert z == pytest.approx(expected[term], rel=1e-9)


def test_suggested_queries_parse_and_only_restrict():
    rng = random.Random(43)
    vocab = [f"w{i}" for i in range(10)]
    provider = random_corpus(rng, 80, vocab)
    gateway = Gateway([provider], default_limit=1000)
    base_query = parse("w1 or w2")
    base_keys = gateway.execute(normalize(base_query)).docs.keys()

    docs = provider.documents()[:12]
    rel = [build_term_vector(f"{d.title} {d.abstract_text}") for d in docs[:6]]
    irrel = [build_term_vector(f"{d.title} {d.abstract_text}") for d in docs[6:]]
    out = suggest_terms(base_query, rel, irrel)
    for s in out:
        nq = normalize(parse(s.suggested_query))  # must parse
        keys = gateway.execute(nq).docs.keys()
        assert keys <= base_keys, s.suggested_query


def test_apply_suggestion_adds_one_clause():
    out = suggest_terms(parse("a and b"), planted_relevant_vectors(), [])
    ast = apply_suggestion(out[0])
    clauses = normalize(ast).clauses
    base_clauses = normalize(parse("a and b")).clauses
    assert clauses[:-1] == base_clauses
    added = clauses[-1]
    assert {t.text for t in added.positives} == {"plasmonic"}

    removal = suggest_terms(parse("a"), [], planted_relevant_vectors())[0]
    ast = apply_suggestion(removal)
    clauses = normalize(ast).clauses
    assert clauses[0] == normalize(parse("a")).clauses[0]
    assert {t.text for t in clauses[-1].negatives} == {"plasmonic"}


def test_apply_then_render_then_parse_is_fixed_point():
    out = suggest_terms(parse("a or b and c"), planted_relevant_vectors(), [])
    ast = apply_suggestion(out[0])
    again = parse(render_ast(ast))
    assert again == ast
    assert normalize(again) == normalize(ast)
