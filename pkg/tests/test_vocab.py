import random

import pytest
from hypothesis import given, settings, strategies as st

from ltcat.exceptions import CycleError, DanglingBroaderError, ParseError, UnknownConcept
from ltcat.schema import LangText
from ltcat.vocab import (
    OMTD_NS, TaxonomyConcept, Vocabulary, VocabularySet, accept_candidate,
    parse_vocabulary, propose_keywords, serialize_vocabulary,
)

import generators
import oracles


SMALL = """vocabulary demo

iri http://example.org/v/TextProcessing
prefLabel@en Text Processing

iri http://example.org/v/NamedEntityRecognition
prefLabel@en Named Entity Recognition
altLabel@en NER
broader http://example.org/v/TextProcessing
"""


def test_parse_small_vocabulary():
    vocab = parse_vocabulary(SMALL)
    assert vocab.id == "demo"
    assert len(vocab.concepts) == 2
    assert len(vocab.roots()) == 1
    assert vocab.roots()[0].pref_label() == "Text Processing"


def test_parse_cycle():
    text = """vocabulary bad

iri http://example.org/A
prefLabel@en A
broader http://example.org/B

iri http://example.org/B
prefLabel@en B
broader http://example.org/A
"""
    with pytest.raises(CycleError):
        parse_vocabulary(text)


def test_parse_empty():
    vocab = parse_vocabulary("")
    assert vocab.concepts == ()


def test_parse_dangling_broader():
    text = """vocabulary bad

iri http://example.org/A
prefLabel@en A
broader http://example.org/Missing
"""
    with pytest.raises(DanglingBroaderError):
        parse_vocabulary(text)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_vocabulary("vocabulary x\n\nnonsense line here\n")
    assert exc.value.line == 3


def test_roundtrip_serialize_parse(vocabs):
    taxonomy = vocabs["lt-taxonomy"]
    again = parse_vocabulary(serialize_vocabulary(taxonomy))
    assert again.id == taxonomy.id
    assert again.concepts == taxonomy.concepts


def test_descendants_leaf_and_chain():
    text = """vocabulary chain

iri http://example.org/a
prefLabel@en A

iri http://example.org/b
prefLabel@en B
broader http://example.org/a

iri http://example.org/c
prefLabel@en C
broader http://example.org/b
"""
    vocab = parse_vocabulary(text)
    assert vocab.descendants("http://example.org/c") == {"http://example.org/c"}
    assert vocab.descendants("http://example.org/a") == {
        "http://example.org/a", "http://example.org/b", "http://example.org/c"}
    with pytest.raises(UnknownConcept):
        vocab.descendants("http://example.org/nope")


def _random_forest(seed: int, n: int) -> Vocabulary:
    rng = random.Random(seed)
    concepts = []
    for i in range(n):
        broader = None
        if i > 0 and rng.random() < 0.8:
            broader = f"http://example.org/n{rng.randrange(i)}"
        concepts.append(TaxonomyConcept(
            iri=f"http://example.org/n{i}",
            pref_labels=(LangText("en", f"Node {i}"),),
            broader=broader))
    return Vocabulary(id="forest", concepts=tuple(concepts))


def test_descendants_against_bruteforce_reachability():
    vocab = _random_forest(42, 50)
    for concept in vocab.concepts:
        assert vocab.descendants(concept.iri) == oracles.closure(vocab, concept.iri)


def test_descendants_monotone():
    vocab = _random_forest(43, 40)
    for concept in vocab.concepts:
        outer = vocab.descendants(concept.iri)
        for inner_iri in outer:
            assert vocab.descendants(inner_iri) <= outer


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=2, max_value=60))
def test_descendants_property_random_forests(seed, n):
    vocab = _random_forest(seed, n)
    node = vocab.concepts[seed % n].iri
    assert vocab.descendants(node) == oracles.closure(vocab, node)


def test_resolve_label(vocabs):
    taxonomy = vocabs["lt-taxonomy"]
    hits = taxonomy.resolve_label("NamedEntityRecognition")
    assert hits == [OMTD_NS + "NamedEntityRecognition"]
    assert taxonomy.resolve_label("ner") == [OMTD_NS + "NamedEntityRecognition"]
    assert taxonomy.resolve_label("no-such-label") == []


def test_resolve_label_shared_across_concepts():
    text = """vocabulary dup

iri http://example.org/z
prefLabel@en Zeta
altLabel@en shared

iri http://example.org/a
prefLabel@en Alpha
altLabel@en Shared
"""
    vocab = parse_vocabulary(text)
    assert vocab.resolve_label("SHARED") == ["http://example.org/a",
                                             "http://example.org/z"]


def test_vocabulary_set_disjoint_iri_spaces(vocabs):
    clash = Vocabulary(id="clash", concepts=(TaxonomyConcept(
        iri=OMTD_NS + "NamedEntityRecognition",
        pref_labels=(LangText("en", "x"),)),))
    with pytest.raises(DanglingBroaderError):
        vocabs_copy = VocabularySet({v: vocabs[v] for v in vocabs.ids()})
        vocabs_copy.install(clash)


def _records_with_keywords(keywords_per_record):
    rng = random.Random(9)
    out = []
    for kws in keywords_per_record:
        record = generators.record(rng, "ToolService")
        entity = record.entity
        import dataclasses
        entity = dataclasses.replace(
            entity, keywords=tuple(LangText("en", k) for k in kws))
        out.append(dataclasses.replace(record, entity=entity))
    return out


def test_propose_keywords_counts(vocabs):
    taxonomy = vocabs["lt-taxonomy"]
    records = _records_with_keywords([["transliteration"], ["Transliteration"],
                                      ["transliteration", "other"], ["other"]])
    candidates = propose_keywords(records, 2, taxonomy)
    by_kw = {c.keyword: c for c in candidates}
    # case-folded; occurrence_count = distinct records carrying the keyword
    assert by_kw["transliteration"].occurrence_count == 3
    assert by_kw["other"].occurrence_count == 2


def test_propose_keywords_excludes_existing_labels(vocabs):
    taxonomy = vocabs["lt-taxonomy"]
    # "NER" is an alt label of an existing concept -> excluded
    records = _records_with_keywords([["NER"], ["NER"], ["NER"]])
    assert propose_keywords(records, 2, taxonomy) == []


def test_propose_keywords_min_count_above_corpus(vocabs):
    records = _records_with_keywords([["rare"]])
    assert propose_keywords(records, 2, vocabs["lt-taxonomy"]) == []


def test_accept_candidate_extends_taxonomy(vocabs):
    local = VocabularySet()
    local.install(vocabs["lt-taxonomy"])
    concept = accept_candidate(local, "speech diarization")
    assert concept.iri.startswith(OMTD_NS)
    assert concept.iri in local["lt-taxonomy"]
    assert local["lt-taxonomy"].resolve_label("speech diarization") == [concept.iri]
