import dataclasses
import random

import pytest

from ltcat.exceptions import BadDimension, BadPage, UnknownFacet
from ltcat.search import SearchIndex, SearchQuery, FACET_IDS
from ltcat.store import Store
from ltcat.vocab import OMTD_NS

import generators
import oracles


@pytest.fixture(scope="module")
def corpus_store(tmp_path_factory, vocabs):
    store = Store(tmp_path_factory.mktemp("search") / "data", vocabularies=vocabs)
    rng = random.Random(101)
    for _ in range(120):
        store.put(generators.record(rng))
    return store


@pytest.fixture(scope="module")
def index(corpus_store, vocabs):
    idx = SearchIndex(vocabs)
    idx.attach(corpus_store)
    return idx


def _record_map(store):
    return {s.record_id: s.record for s in store.all_records()}


def test_index_then_query_by_name(vocabs, fresh_store, annie_record):
    index = SearchIndex(vocabs)
    index.attach(fresh_store)
    record_id = fresh_store.put(annie_record).value
    hits, _facets, total = index.search(SearchQuery(text="ANNIE"))
    assert total == 1 and hits[0].record_id == record_id
    fresh_store.soft_delete(record_id)
    _, _, total_after = index.search(SearchQuery(text="ANNIE"))
    assert total_after == 0


def test_text_search_ranks_short_name_match_first(vocabs, fresh_store, annie_record):
    index = SearchIndex(vocabs)
    index.attach(fresh_store)
    rng = random.Random(41)
    record = generators.record(rng, "Corpus")
    entity = dataclasses.replace(
        record.entity,
        descriptions=(generators.LangText("en", "Contains output of annie runs"),))
    fresh_store.put(dataclasses.replace(record, entity=entity))
    annie_id = fresh_store.put(annie_record).value
    hits, _facets, total = index.search(SearchQuery(text="annie"))
    assert total == 2
    assert hits[0].record_id == annie_id  # short-name match outweighs description


def test_rebuild_equals_incremental(corpus_store, vocabs, index):
    fresh = SearchIndex(vocabs)
    fresh.rebuild(corpus_store)
    for query in (SearchQuery(text="tool"), SearchQuery(),
                  SearchQuery(facet_filters={"language": ["en"]})):
        a = fresh.search(query)
        b = index.search(query)
        assert [h.record_id for h in a[0]] == [h.record_id for h in b[0]]
        assert a[2] == b[2]


def test_empty_query_returns_all(corpus_store, index):
    _, _, total = index.search(SearchQuery(page_size=10))
    assert total == corpus_store.list(size=1).total


def test_bad_queries(index):
    with pytest.raises(UnknownFacet):
        index.search(SearchQuery(facet_filters={"nope": ["x"]}))
    with pytest.raises(BadPage):
        index.search(SearchQuery(page_size=1000))
    with pytest.raises(BadPage):
        index.search(SearchQuery(sort="upside-down"))


def test_parent_facet_matches_child_tagged_records(vocabs, fresh_store):
    index = SearchIndex(vocabs)
    index.attach(fresh_store)
    rng = random.Random(42)
    record = generators.record(rng, "ToolService")
    entity = dataclasses.replace(record.entity,
                                 functions=(OMTD_NS + "NamedEntityRecognition",))
    rid = fresh_store.put(dataclasses.replace(record, entity=entity)).value
    # filter by the parent concept: record tagged only with the child matches
    hits, facets, total = index.search(SearchQuery(
        facet_filters={"ltArea": [OMTD_NS + "Annotation"]}))
    assert total == 1 and hits[0].record_id == rid
    lt_facet = next(f for f in facets if f.facet == "ltArea")
    by_value = {b.value: b for b in lt_facet.buckets}
    # counts rolled up to every ancestor
    for iri in (OMTD_NS + "NamedEntityRecognition", OMTD_NS + "Annotation",
                OMTD_NS + "TextProcessing", OMTD_NS + "LanguageTechnology"):
        assert by_value[iri].count == 1
        assert by_value[iri].rolled_up


def _random_query(rng, vocabs) -> SearchQuery:
    filters = {}
    if rng.random() < 0.5:
        filters["language"] = rng.sample(generators.LANGS, rng.randint(1, 2))
    if rng.random() < 0.4:
        filters["ltArea"] = [rng.choice(
            [OMTD_NS + n for n in ("Annotation", "TextProcessing",
                                   "NamedEntityRecognition", "MachineTranslation",
                                   "SpeechProcessing", "LanguageTechnology")])]
    if rng.random() < 0.3:
        filters["entityKind"] = [rng.choice(
            ["languageResource", "organization", "person", "project"])]
    if rng.random() < 0.3:
        filters["lrType"] = [rng.choice(
            ["toolService", "corpus", "lexicalConceptualResource"])]
    if rng.random() < 0.2:
        filters["licence"] = [rng.choice(generators.LICENCES)]
    text = rng.choice([None, None, "tool", "corpus", rng.choice(generators.WORDS)])
    return SearchQuery(text=text, facet_filters=filters, page_size=100)


def test_filter_soundness_vs_linear_scan(corpus_store, index, vocabs):
    records = _record_map(corpus_store)
    rng = random.Random(103)
    for _ in range(60):
        query = _random_query(rng, vocabs)
        expected = oracles.search_scan(records, query.text,
                                       query.facet_filters, vocabs)
        hits, _facets, total = index.search(query)
        got_all = set()
        page = 1
        while True:
            page_hits, _, _ = index.search(dataclasses.replace(query, page=page))
            if not page_hits:
                break
            got_all.update(h.record_id for h in page_hits)
            page += 1
        assert got_all == expected, (query, got_all ^ expected)
        assert total == len(expected)


def test_facet_counts_equal_filtered_cardinality(corpus_store, index, vocabs):
    records = _record_map(corpus_store)
    rng = random.Random(104)
    for _ in range(15):
        query = _random_query(rng, vocabs)
        _hits, facets, _total = index.search(query)
        for facet_result in facets:
            for bucket in facet_result.buckets:
                drilled = dict(query.facet_filters)
                drilled[facet_result.facet] = [bucket.value]
                expected = oracles.search_scan(records, query.text, drilled, vocabs)
                assert bucket.count == len(expected), (
                    facet_result.facet, bucket.value)


def test_rollup_count_is_union_not_sum(vocabs, fresh_store):
    index = SearchIndex(vocabs)
    index.attach(fresh_store)
    rng = random.Random(44)
    # one record tagged with BOTH child concepts: parent count must be 1
    record = generators.record(rng, "ToolService")
    entity = dataclasses.replace(record.entity, functions=(
        OMTD_NS + "NamedEntityRecognition", OMTD_NS + "PosTagging"))
    fresh_store.put(dataclasses.replace(record, entity=entity))
    _, facets, _ = index.search(SearchQuery())
    lt_facet = next(f for f in facets if f.facet == "ltArea")
    annotation = next(b for b in lt_facet.buckets
                      if b.value == OMTD_NS + "Annotation")
    assert annotation.count == 1


def test_landscape_matches_nested_scan(corpus_store, index, vocabs):
    records = _record_map(corpus_store)
    view = index.landscape("language", "entityKind")
    taxonomy = vocabs["lt-taxonomy"]

    expected: dict[tuple[str, str], set] = {}
    for rid, record in records.items():
        facets = oracles.oracle_facets(record, vocabs)
        for lang in facets["language"]:
            for kind in facets["entityKind"]:
                expected.setdefault((lang, kind), set()).add(rid)
    assert {(a, b): n for a, b, n in view.cells} == {
        k: len(v) for k, v in expected.items()}


def test_landscape_lt_area_rollup(vocabs, fresh_store):
    index = SearchIndex(vocabs)
    index.attach(fresh_store)
    rng = random.Random(45)
    record = generators.record(rng, "ToolService")
    entity = dataclasses.replace(record.entity,
                                 functions=(OMTD_NS + "NamedEntityRecognition",))
    spec = dataclasses.replace(entity.input_specs[0], languages=("en",))
    entity = dataclasses.replace(entity, input_specs=(spec,),
                                 output_specs=())
    fresh_store.put(dataclasses.replace(record, entity=entity))
    view = index.landscape("language", "ltArea")
    cells = {(a, b): n for a, b, n in view.cells}
    for level in ("NamedEntityRecognition", "Annotation", "TextProcessing",
                  "LanguageTechnology"):
        assert cells[("en", OMTD_NS + level)] == 1


def test_landscape_bad_dimensions(index):
    with pytest.raises(BadDimension):
        index.landscape("language", "language")
    with pytest.raises(BadDimension):
        index.landscape("language", "nope")
