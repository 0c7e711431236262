import os
import random

import pytest

from helpers import random_corpus
from projsearch.providers import (
    AbstractDoc,
    AllProvidersFailed,
    ArxivProvider,
    DocSet,
    Gateway,
    HttpFetcher,
    LocalProvider,
    ProviderConfig,
    ProviderRejected,
    ProviderUnavailable,
    RateLimited,
    combine,
    merge_providers,
    normalized_title,
)
from projsearch.providers.pubmed import PubmedProvider
from projsearch.query import AtomicTerm, evaluate, normalize, parse


def doc(provider, doc_id, title="t", abstract="x", alt_ids=()):
    return AbstractDoc(
        doc_id=doc_id, provider=provider, title=title, abstract_text=abstract, alt_ids=alt_ids
    )


# -- local provider ----------------------------------------------------------


def seeded_provider():
    p = LocalProvider()
    p.add("d1", "gold particles", "medical uses of gold")
    p.add("d2", "silver catalysis", "nothing relevant here")
    p.add("d3", "golden ratios", "gold appears in the abstract")
    return p


def test_local_fetch_matches_substring_on_token_boundaries():
    p = seeded_provider()
    hits = p.fetch_term(AtomicTerm("gold"), limit=10)
    assert [d.doc_id for d in hits] == ["d1", "d3"]  # "golden" does not match


def test_local_fetch_absent_term_is_empty():
    assert seeded_provider().fetch_term(AtomicTerm("zzqx"), limit=10) == []


def test_local_fetch_respects_limit():
    assert len(seeded_provider().fetch_term(AtomicTerm("gold"), limit=1)) == 1


def test_local_from_file_round_trip(tmp_path):
    path = tmp_path / "corpus.tsv"
    path.write_text("a1\tTitle One\tbody text\na2\tTitle Two\tmore text\n", "utf-8")
    p = LocalProvider.from_file(path)
    assert len(p) == 2
    assert p.documents()[0].title == "Title One"
    bad = tmp_path / "bad.tsv"
    bad.write_text("only two\tfields\n", "utf-8")
    with pytest.raises(ValueError):
        LocalProvider.from_file(bad)


# -- DocSet algebra ----------------------------------------------------------


def test_combine_intersection_and_difference():
    acc = DocSet([doc("local", "1"), doc("local", "2"), doc("local", "3")])
    other = DocSet([doc("local", "2"), doc("local", "3"), doc("local", "4")])
    assert {d.doc_id for d in combine(acc, other, negative=False)} == {"2", "3"}
    only_two = DocSet([doc("local", "2")])
    assert {d.doc_id for d in combine(acc, only_two, negative=True)} == {"1", "3"}


def test_docset_iteration_sorted_and_unique():
    ds = DocSet([doc("pubmed", "9"), doc("arxiv", "5"), doc("arxiv", "1"), doc("arxiv", "1")])
    assert [d.key for d in ds] == [("arxiv", "1"), ("arxiv", "5"), ("pubmed", "9")]
    assert len(ds) == 3


def test_intersection_honors_merged_alt_ids():
    merged = doc("arxiv", "a1", alt_ids=(("pubmed", "p7"),))
    acc = DocSet([merged])
    assert len(acc.intersect(DocSet([doc("pubmed", "p7")]))) == 1
    assert len(acc.subtract(DocSet([doc("pubmed", "p7")]))) == 0


# -- near-duplicate merge ------------------------------------------------------


def test_merge_disjoint_titles_retained():
    out = merge_providers([DocSet([doc("arxiv", "a1", "One")]), DocSet([doc("pubmed", "p1", "Two")])])
    assert {d.key for d in out} == {("arxiv", "a1"), ("pubmed", "p1")}


def test_merge_same_normalized_title_across_providers():
    a = doc("arxiv", "a1", "Gold Nanorobots!", abstract="one")
    p = doc("pubmed", "p1", "gold nanorobots", abstract="two")
    out = merge_providers([DocSet([a]), DocSet([p])])
    assert len(out) == 1
    winner = next(iter(out))
    assert winner.key == ("arxiv", "a1")  # provider order tie-break
    assert ("pubmed", "p1") in winner.alt_ids


def test_merge_same_provider_title_collision_kept_apart():
    out = merge_providers([DocSet([doc("arxiv", "a1", "Same"), doc("arxiv", "a2", "Same")])])
    assert len(out) == 2


def test_merge_empty():
    assert len(merge_providers([])) == 0


def test_normalized_title_strips_punctuation_and_case():
    assert normalized_title("Gold, Nanorobots?") == normalized_title("gold nanorobots")


# -- gateway -------------------------------------------------------------------


class CountingProvider:
    """Local-provider wrapper that counts fetch calls."""

    def __init__(self, inner, name=None):
        self.inner = inner
        self.name = name or inner.name
        self.calls = 0

    def fetch_term(self, atom, limit):
        self.calls += 1
        return self.inner.fetch_term(atom, limit)


class FailingProvider:
    def __init__(self, name="arxiv", error=ProviderUnavailable):
        self.name = name
        self.error = error
        self.calls = 0

    def fetch_term(self, atom, limit):
        self.calls += 1
        raise self.error(self.name, "down")


def test_execute_matches_evaluate_on_seeded_corpus():
    provider = seeded_provider()
    gateway = Gateway([provider])
    nq = normalize(parse("gold and not silver"))
    result = gateway.execute(nq)
    keys = {d.doc_id for d in result.docs}
    for d in provider.documents():
        expected = evaluate(nq, f"{d.title} {d.abstract_text}")
        assert (d.doc_id in keys) == expected
    assert result.partial is False


def test_execute_empty_when_term_absent():
    gateway = Gateway([seeded_provider()])
    assert len(gateway.execute(normalize(parse("zzqx"))).docs) == 0


def test_execute_intersection_idempotent():
    gateway = Gateway([seeded_provider()])
    once = gateway.execute(normalize(parse("gold")))
    twice = gateway.execute(normalize(parse("gold and gold")))
    assert once.docs == twice.docs


def test_execute_requires_positive_clause_and_provider():
    gateway = Gateway([seeded_provider()])
    with pytest.raises(ValueError):
        gateway.execute(normalize(parse("a")), providers=[])
    with pytest.raises(ValueError):
        gateway.execute(normalize(parse("a")), providers=["nope"])


def test_execute_caches_repeat_queries():
    counting = CountingProvider(seeded_provider())
    gateway = Gateway([counting])
    nq = normalize(parse("gold or silver and not zzqx"))
    first = gateway.execute(nq)
    calls_after_first = counting.calls
    second = gateway.execute(nq)
    assert counting.calls == calls_after_first
    assert first.docs == second.docs


def test_partial_flag_when_one_provider_fails():
    failing = FailingProvider(name="arxiv")
    gateway = Gateway([failing, seeded_provider()])
    result = gateway.execute(normalize(parse("gold")))
    assert result.partial is True
    assert {d.provider for d in result.docs} == {"local"}
    assert result.failures[0].provider == "arxiv"


def test_all_providers_failed():
    gateway = Gateway([FailingProvider("arxiv"), FailingProvider("pubmed", ProviderRejected)])
    with pytest.raises(AllProvidersFailed):
        gateway.execute(normalize(parse("gold")))


def test_monotonicity_adding_clauses_never_grows():
    rng = random.Random(5)
    vocab = [f"w{i}" for i in range(12)]
    provider = random_corpus(rng, 120, vocab)
    gateway = Gateway([provider])
    base = gateway.execute(normalize(parse("w1 or w2"))).docs
    more_positive = gateway.execute(normalize(parse("(w1 or w2) and w3"))).docs
    more_negative = gateway.execute(normalize(parse("(w1 or w2) and not w4"))).docs
    assert more_positive.keys() <= base.keys()
    assert more_negative.keys() <= base.keys()


def test_oracle_equivalence_randomized():
    rng = random.Random(23)
    vocab = [f"w{i}" for i in range(15)]
    for _ in range(40):
        provider = random_corpus(rng, 60, vocab)
        gateway = Gateway([provider], default_limit=1000)
        for _ in range(5):
            from helpers import random_ast

            nq = normalize(random_ast(rng, vocab[:8]))
            result = gateway.execute(nq)
            keys = {d.doc_id for d in result.docs}
            for d in provider.documents():
                assert (d.doc_id in keys) == evaluate(nq, f"{d.title} {d.abstract_text}")


# -- HTTP machinery ---------------------------------------------------------------


class FakeResponse:
    def __init__(self, text="", status_code=200, headers=None):
        self.text = text
        self.status_code = status_code
        self.headers = headers or {}


def test_fetcher_throttles_by_min_interval():
    now = [0.0]
    sleeps = []

    def clock():
        return now[0]

    def sleep(t):
        sleeps.append(t)
        now[0] += t

    fetcher = HttpFetcher("arxiv", min_interval=2.0, get=lambda *a, **k: FakeResponse("ok"),
                          sleep=sleep, clock=clock)
    fetcher.fetch("http://x", {})
    fetcher.fetch("http://x", {})
    assert sleeps and sleeps[0] == pytest.approx(2.0)


def test_fetcher_honors_retry_after_then_succeeds():
    responses = [FakeResponse("", 429, {"Retry-After": "3"}), FakeResponse("fine", 200)]
    sleeps = []
    fetcher = HttpFetcher(
        "pubmed",
        get=lambda *a, **k: responses.pop(0),
        sleep=sleeps.append,
        clock=lambda: 0.0,
    )
    assert fetcher.fetch("http://x", {}) == "fine"
    assert 3.0 in sleeps


def test_fetcher_rate_limited_after_retry():
    fetcher = HttpFetcher(
        "pubmed",
        get=lambda *a, **k: FakeResponse("", 429, {"Retry-After": "1"}),
        sleep=lambda t: None,
        clock=lambda: 0.0,
    )
    with pytest.raises(RateLimited):
        fetcher.fetch("http://x", {})


def test_fetcher_maps_http_errors():
    fetcher = HttpFetcher("arxiv", get=lambda *a, **k: FakeResponse("", 500), clock=lambda: 0.0)
    with pytest.raises(ProviderRejected):
        fetcher.fetch("http://x", {})


# -- provider payload parsing -------------------------------------------------------


ARXIV_FEED = """<?xml version='1.0' encoding='UTF-8'?>
<feed xmlns="http://www.w3.org/2005/Atom">
  <entry>
    <id>http://arxiv.org/abs/2101.00001v1</id>
    <title>Gold  Nanorobotics
      Advances</title>
    <summary>Uses of gold nanorobotics in medicine.</summary>
  </entry>
  <entry>
    <id>http://arxiv.org/abs/2101.00002v2</id>
    <title>Second Paper</title>
    <summary>More text.</summary>
  </entry>
</feed>"""


def test_arxiv_parses_atom_feed():
    sent = {}

    def get(url, params=None, timeout=None):
        sent["url"] = url
        sent["params"] = params
        return FakeResponse(ARXIV_FEED)

    provider = ArxivProvider(
        ProviderConfig(base_url="http://export.example"),
        fetcher=HttpFetcher("arxiv", get=get, clock=lambda: 0.0),
    )
    docs = provider.fetch_term(AtomicTerm("gold nanorobotics"), limit=5)
    assert sent["url"] == "http://export.example/api/query"
    assert sent["params"]["search_query"] == 'all:"gold nanorobotics"'
    assert sent["params"]["max_results"] == "5"
    assert [d.doc_id for d in docs] == ["2101.00001v1", "2101.00002v2"]
    assert docs[0].title == "Gold Nanorobotics Advances"
    assert docs[0].provider == "arxiv"


def test_arxiv_rejects_malformed_feed():
    provider = ArxivProvider(
        ProviderConfig(base_url="http://x"),
        fetcher=HttpFetcher("arxiv", get=lambda *a, **k: FakeResponse("<not-xml"), clock=lambda: 0.0),
    )
    with pytest.raises(ProviderRejected):
        provider.fetch_term(AtomicTerm("gold"), limit=5)


ESEARCH = """<?xml version="1.0"?>
<eSearchResult><IdList><Id>111</Id><Id>222</Id></IdList></eSearchResult>"""

EFETCH = """<?xml version="1.0"?>
<PubmedArticleSet>
  <PubmedArticle>
    <MedlineCitation><PMID>111</PMID>
      <Article>
        <ArticleTitle>Gold in vivo</ArticleTitle>
        <Abstract><AbstractText>Part one.</AbstractText><AbstractText>Part two.</AbstractText></Abstract>
      </Article>
    </MedlineCitation>
  </PubmedArticle>
  <PubmedArticle>
    <MedlineCitation><PMID>222</PMID>
      <Article>
        <ArticleTitle>Silver in vitro</ArticleTitle>
        <Abstract><AbstractText>Only part.</AbstractText></Abstract>
      </Article>
    </MedlineCitation>
  </PubmedArticle>
</PubmedArticleSet>"""


def test_pubmed_two_step_fetch():
    calls = []

    def get(url, params=None, timeout=None):
        calls.append((url, dict(params)))
        return FakeResponse(ESEARCH if "esearch" in url else EFETCH)

    provider = PubmedProvider(
        ProviderConfig(base_url="http://eutils.example"),
        fetcher=HttpFetcher("pubmed", get=get, clock=lambda: 0.0),
    )
    docs = provider.fetch_term(AtomicTerm("gold"), limit=7)
    assert len(calls) == 2
    assert calls[0][0].endswith("esearch.fcgi")
    assert calls[1][0].endswith("efetch.fcgi")
    assert calls[1][1]["id"] == "111,222"
    assert [d.doc_id for d in docs] == ["111", "222"]
    assert docs[0].abstract_text == "Part one. Part two."


@pytest.mark.skipif(
    not os.environ.get("PROJSEARCH_LIVE_TESTS"),
    reason="network smoke test; set PROJSEARCH_LIVE_TESTS=1 to run",
)
def test_arxiv_live_contract_smoke():
    provider = ArxivProvider()
    docs = provider.fetch_term(AtomicTerm("nanorobotics"), limit=5)
    assert len(docs) <= 5
    for d in docs:
        assert d.title
        assert "nanorobotics" in f"{d.title} {d.abstract_text}".lower()


def test_pubmed_empty_id_list_skips_second_call():
    calls = []

    def get(url, params=None, timeout=None):
        calls.append(url)
        return FakeResponse("<eSearchResult><IdList/></eSearchResult>")

    provider = PubmedProvider(
        ProviderConfig(base_url="http://x"),
        fetcher=HttpFetcher("pubmed", get=get, clock=lambda: 0.0),
    )
    assert provider.fetch_term(AtomicTerm("zzqx"), limit=3) == []
    assert len(calls) == 1
