import copy
import dataclasses
import random

import pytest

from ltcat.serialization import (
    json_obj_to_tree, parse_xml, record_to_json_obj,
)
from ltcat.tree import RawNode
from ltcat.validation import validate_import, validate_minimal, validate_tree

import generators


def test_appendix_record_is_minimal_compliant(vocabs, annie_xml):
    record, report = validate_import(parse_xml(annie_xml), vocabs)
    assert record is not None
    assert report.is_minimal_compliant
    assert report.errors() == []
    assert report.record_id == "ELG_MDR_LTS_291119_00000002"


def test_appendix_without_function_fails(vocabs, annie_xml):
    tree = parse_xml(annie_xml)
    tool = (tree.child("DescribedEntity").child("LanguageResource")
            .child("LRSubclass").child("ToolService"))
    tool.children = [c for c in tool.children if c.name != "function"]
    record, report = validate_import(tree, vocabs)
    assert record is None
    findings = [f for f in report.findings if f.code == "MISSING_MANDATORY"]
    assert [f.path for f in findings] == ["entity.functions"]


def test_functional_service_incomplete(vocabs, annie_xml):
    tree = parse_xml(annie_xml)
    tool = (tree.child("DescribedEntity").child("LanguageResource")
            .child("LRSubclass").child("ToolService"))
    tool.children.append(RawNode(name="isFunctionalService", text="true"))
    tool.children.append(RawNode(name="dockerDownloadLocation",
                                 text="https://registry.example.org/x"))
    record, report = validate_import(tree, vocabs)
    assert record is None
    codes = [(f.path, f.code) for f in report.findings
             if f.code == "FUNCTIONAL_SERVICE_INCOMPLETE"]
    assert codes == [("entity.execution_endpoint", "FUNCTIONAL_SERVICE_INCOMPLETE")]


def test_annotated_corpus_without_raw_version(vocabs):
    rng = random.Random(11)
    corpus = generators.corpus(rng)
    corpus = dataclasses.replace(
        corpus, is_annotated=True,
        annotation_types=(generators.ANNOTATIONS[0],), raw_version=None)
    record = generators.record(rng, "Corpus")
    record = dataclasses.replace(record, entity=corpus)
    report = validate_minimal(record, vocabs)
    assert not report.is_minimal_compliant
    assert any(f.path == "entity.raw_version" and f.code == "MISSING_MANDATORY"
               for f in report.findings)


def test_bad_language_tag_reported_at_path(vocabs, annie_xml):
    tree = parse_xml(annie_xml)
    spec = (tree.child("DescribedEntity").child("LanguageResource")
            .child("LRSubclass").child("ToolService").child("inputContentResource"))
    spec.child("languageTag").text = "e n"
    record, report = validate_import(tree, vocabs)
    assert record is None
    bad = [f for f in report.findings if f.code == "BAD_LANGUAGE_TAG"]
    assert bad and bad[0].path == "entity.input_specs[0].languages"


def test_unknown_element_preserved_as_extra(vocabs, annie_xml):
    tree = parse_xml(annie_xml)
    lr = tree.child("DescribedEntity").child("LanguageResource")
    lr.children.append(RawNode(name="vendorRating", text="5 stars"))
    record, report = validate_import(tree, vocabs)
    assert record is not None
    infos = [f for f in report.findings if f.code == "UNKNOWN_FIELD"]
    assert any(f.path == "entity.vendorRating" for f in infos)
    assert any(e.path == "entity" and e.node.name == "vendorRating"
               for e in record.extras)
    # extras survive re-emission
    from ltcat.tree import record_to_tree
    emitted = record_to_tree(record)
    lr2 = emitted.child("DescribedEntity").child("LanguageResource")
    assert lr2.child("vendorRating").scalar() == "5 stars"


def test_unresolved_concept_is_error(vocabs, annie_xml):
    tree = parse_xml(annie_xml)
    tool = (tree.child("DescribedEntity").child("LanguageResource")
            .child("LRSubclass").child("ToolService"))
    tool.child("function").text = "ms:NoSuchFunction"
    record, report = validate_import(tree, vocabs)
    assert record is None
    assert any(f.code == "UNRESOLVED_CONCEPT" and f.path == "entity.functions"
               for f in report.findings)


def test_deprecated_concept_is_warning(vocabs):
    from ltcat.vocab import (
        TaxonomyConcept, Vocabulary, VocabularySet, parse_vocabulary,
        serialize_vocabulary,
    )
    from ltcat.schema import LangText

    base = vocabs["lt-taxonomy"]
    old = TaxonomyConcept(iri="http://w3id.org/meta-share/omtd-share/OldArea",
                          pref_labels=(LangText("en", "Old Area"),),
                          broader=base.roots()[0].iri, deprecated=True)
    patched = VocabularySet()
    for vid in vocabs.ids():
        if vid == "lt-taxonomy":
            patched.install(Vocabulary(id=vid, concepts=base.concepts + (old,)))
        else:
            patched.install(vocabs[vid])
    rng = random.Random(12)
    record = generators.record(rng, "ToolService")
    entity = dataclasses.replace(record.entity, functions=(old.iri,))
    record = dataclasses.replace(record, entity=entity)
    report = validate_minimal(record, patched)
    assert report.is_minimal_compliant
    assert any(f.code == "DEPRECATED_CONCEPT" for f in report.findings)


def test_date_order(vocabs, annie_xml):
    tree = parse_xml(annie_xml)
    tree.child("metadataLastDateUpdated").text = "2019-11-01"
    record, report = validate_import(tree, vocabs)
    assert record is None
    assert any(f.code == "DATE_ORDER" for f in report.findings)


def test_determinism(vocabs, annie_xml):
    tree1 = parse_xml(annie_xml)
    tree2 = parse_xml(annie_xml)
    _, report1 = validate_import(tree1, vocabs)
    _, report2 = validate_import(tree2, vocabs)
    assert report1.as_dict() == report2.as_dict()


def test_monotonicity_adding_optional_field(vocabs):
    # adding optional/recommended content never introduces an error
    rng = random.Random(13)
    for _ in range(20):
        record = generators.record(rng)
        base_report = validate_minimal(record, vocabs)
        assert base_report.is_minimal_compliant, base_report.as_text()
        entity = record.entity
        richer = dataclasses.replace(
            entity, keywords=getattr(entity, "keywords", ()) + (
                generators.LangText("en", "extra-keyword"),)) \
            if hasattr(entity, "keywords") else entity
        richer_report = validate_minimal(
            dataclasses.replace(record, entity=richer), vocabs)
        assert richer_report.is_minimal_compliant


def test_validate_minimal_matches_import_route(vocabs):
    rng = random.Random(14)
    for _ in range(10):
        record = generators.record(rng)
        direct = validate_minimal(record, vocabs)
        via_json = validate_tree(json_obj_to_tree(record_to_json_obj(record)),
                                 vocabs)[1]
        assert direct.as_dict()["findings"] == via_json.as_dict()["findings"]


def test_ingested_requires_source(vocabs, annie_xml):
    tree = parse_xml(annie_xml)
    tree.children.insert(6, RawNode(name="curationStatus", text="ingested"))
    record, report = validate_import(tree, vocabs)
    assert record is None
    assert any(f.code == "STATUS_SOURCE_MISMATCH" for f in report.findings)


def test_bare_minimum_record_is_compliant(vocabs):
    """A record carrying only the mandatory matrix content validates; absent
    optional fields never produce errors."""
    from ltcat.schema import (
        ContactPoint, IOSpec, LangText, MetadataRecord, Ref, Organization,
        Person, SoftwareDistribution, ToolService, LicenceTerms,
    )
    from ltcat.vocab import METASHARE_NS as MS, OMTD_NS
    import datetime as dt

    entity = ToolService(
        names=(LangText("en", "Bare Tagger"),),
        descriptions=(LangText("en", "Smallest possible tool record."),),
        additional_info=(ContactPoint("email", "info@example.org"),),
        resource_provider=Ref(stub=Organization(names=(LangText("en", "Org"),))),
        functions=(OMTD_NS + "PosTagging",),
        language_dependent=True,
        input_specs=(IOSpec(languages=("en",), media_type=MS + "text",
                            data_formats=(MS + "Text",)),),
        distributions=(SoftwareDistribution(
            form=MS + "webService",
            access_location="https://example.org/api",
            licences=(Ref(stub=LicenceTerms(names=(LangText("en", "MIT"),),
                                            access_url="https://mit.example")),)),),
    )
    record = MetadataRecord(
        creation_date=dt.date(2024, 1, 1), last_updated=dt.date(2024, 1, 1),
        curator=Ref(stub=Person(surnames=(LangText("en", "Doe"),))),
        entity=entity)
    report = validate_minimal(record, vocabs)
    assert report.is_minimal_compliant, report.as_text()
    assert all(f.severity != "error" for f in report.findings)


def test_wrong_root_tree(vocabs):
    record, report = validate_tree(RawNode(name="SomethingElse"), vocabs)
    assert record is None
    assert report.findings[0].code == "WRONG_ROOT"


def test_report_compliance_flags(vocabs, annie_xml):
    _, report = validate_import(parse_xml(annie_xml), vocabs)
    # warnings present (recommended fields absent) so not fully compliant
    assert report.is_minimal_compliant and not report.is_fully_compliant
    assert "minimal-compliant" in report.as_text()
