import json
import random

import pytest

from ltcat.exceptions import (
    NotCompliant, UnboundTerm, WrongRootError, WrongShapeError, XmlSyntaxError,
)
from ltcat.serialization import (
    CONTEXT_FILENAME, context_object, default_bindings, emit_json, emit_jsonld,
    emit_xml, json_obj_to_tree, load_context, parse_json, parse_xml,
    record_to_json_obj,
)
from ltcat.tree import record_to_tree
from ltcat.validation import validate_import
from ltcat.vocab import OMTD_NS

import generators


def test_parse_appendix_structure(annie_xml):
    tree = parse_xml(annie_xml)
    assert [c.name for c in tree.children] == [
        "MetadataRecordIdentifier", "metadataCreationDate",
        "metadataLastDateUpdated", "metadataCurator", "compliesWith",
        "metadataCreator", "DescribedEntity"]
    ident = tree.child("MetadataRecordIdentifier")
    assert ident.attrs["MetadataRecordIdentifierScheme"] == "ms:elg"
    assert ident.scalar() == "ELG_MDR_LTS_291119_00000002"


def test_parse_errors():
    with pytest.raises(XmlSyntaxError):
        parse_xml("<ms:MetadataRecord><unclosed></ms:MetadataRecord")
    with pytest.raises(WrongRootError):
        parse_xml("<foo:Other/>")


def test_emit_xml_contains_expected_elements(vocabs, annie_record):
    text = emit_xml(annie_record, vocabs)
    assert "<ms:function>ms:NamedEntityRecognition</ms:function>" in text
    assert "<ms:function>ms:PosTagging</ms:function>" in text
    assert "<ms:compliesWith>ms:ELG-SHARE</ms:compliesWith>" in text
    assert 'xmlns:ms="http://purl.org/net/def/metashare/"' in text


def test_emit_xml_two_names_distinct_langs(vocabs):
    rng = random.Random(21)
    record = generators.record(rng, "ToolService")
    import dataclasses
    entity = dataclasses.replace(
        record.entity,
        names=(generators.LangText("en", "Tagger"),
               generators.LangText("de", "Tagger (Deutsch)")))
    record = dataclasses.replace(record, entity=entity)
    text = emit_xml(record, vocabs)
    assert '<ms:resourceName xml:lang="de">' in text
    assert '<ms:resourceName xml:lang="en">' in text


def test_emit_xml_rejects_noncompliant(vocabs):
    rng = random.Random(22)
    record = generators.record(rng, "ToolService")
    import dataclasses
    record = dataclasses.replace(
        record, entity=dataclasses.replace(record.entity, functions=()))
    with pytest.raises(NotCompliant) as exc:
        emit_xml(record, vocabs)
    assert not exc.value.report.is_minimal_compliant


def test_json_contains_both_functions(vocabs, annie_record):
    obj = json.loads(emit_json(annie_record, vocabs))
    tool = obj["MetadataRecord"]["DescribedEntity"]["LanguageResource"]["LRSubclass"]["ToolService"]
    assert tool["function"] == ["ms:NamedEntityRecognition", "ms:PosTagging"]


def test_parse_json_wrong_shape():
    with pytest.raises(WrongShapeError):
        parse_json("{}")
    with pytest.raises(WrongShapeError):
        json_obj_to_tree({"MetadataRecord": 3})


def test_cross_format_tree_equality(vocabs, annie_record):
    canonical = record_to_tree(annie_record)
    via_json = parse_json(emit_json(annie_record, vocabs))
    assert via_json == canonical


def test_xml_roundtrip_appendix(vocabs, annie_xml):
    record, _ = validate_import(parse_xml(annie_xml), vocabs)
    text = emit_xml(record, vocabs)
    again, report = validate_import(parse_xml(text), vocabs)
    assert report.is_minimal_compliant
    assert again == record
    assert again.extras == ()


def test_roundtrip_generated_records(vocabs):
    rng = random.Random(23)
    for _ in range(40):
        record = generators.record(rng)
        xml_text = emit_xml(record, vocabs)
        r1, report1 = validate_import(parse_xml(xml_text), vocabs)
        assert r1 == record, report1.as_text()
        json_text = emit_json(r1, vocabs)
        r2, report2 = validate_import(parse_json(json_text), vocabs)
        assert r2 == record, report2.as_text()
        assert emit_xml(r2, vocabs) == xml_text


def test_canonical_output_is_byte_deterministic(vocabs):
    rng = random.Random(24)
    record = generators.record(rng)
    assert emit_xml(record, vocabs) == emit_xml(record, vocabs)
    assert emit_json(record, vocabs) == emit_json(record, vocabs)


def test_context_file_in_sync_with_field_table():
    assert load_context() == context_object()


def test_jsonld_uses_full_concept_iris(vocabs, annie_record):
    doc = json.loads(emit_jsonld(annie_record, default_bindings(vocabs), vocabs))
    assert doc["@context"] == CONTEXT_FILENAME
    entity = doc["DescribedEntity"]
    assert {"@id": OMTD_NS + "NamedEntityRecognition"} in entity["function"]
    # property IRI for "function" ends /function in the context
    ctx = context_object()["@context"]
    assert ctx["function"]["@id"].endswith("function")


def test_jsonld_unbound_concept(vocabs, annie_record):
    import dataclasses
    bindings = default_bindings(vocabs)
    trimmed = dataclasses.replace(
        bindings, concepts=frozenset(c for c in bindings.concepts
                                     if not c.endswith("NamedEntityRecognition")))
    with pytest.raises(UnboundTerm):
        emit_jsonld(annie_record, trimmed)


def _expand(doc: dict, ctx: dict) -> set:
    """Desk-scale JSON-LD expansion: (property IRI, value) pairs at the
    top level, with term definitions resolved through the context."""
    prefixes = {k: v for k, v in ctx.items() if isinstance(v, str)}

    def resolve(term: str) -> str:
        definition = ctx.get(term)
        if isinstance(definition, dict):
            iri = definition["@id"]
            prefix, _, local = iri.partition(":")
            return prefixes.get(prefix, prefix + ":") + local
        return term

    out = set()
    for key, value in doc.items():
        if key.startswith("@"):
            continue
        out.add((resolve(key), json.dumps(value, sort_keys=True)))
    return out


def test_jsonld_expansion_oracle(vocabs, annie_record):
    doc = json.loads(emit_jsonld(annie_record, default_bindings(vocabs), vocabs,
                                 inline_context=True))
    ctx = doc.pop("@context")
    expanded = _expand(doc, ctx)
    # every top-level property resolves into one of the two namespaces
    for iri, _value in expanded:
        assert iri.startswith("http://purl.org/net/def/metashare/") or \
            iri.startswith("http://w3id.org/meta-share/omtd-share/"), iri
    # and the record identifier survives as a property value
    assert any("ELG_MDR_LTS_291119_00000002" in v for _, v in expanded)
