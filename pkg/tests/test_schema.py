import datetime as dt
import random

import pytest

from ltcat.exceptions import InvalidEntity, UnknownSubtype
from ltcat.fields import field_registry
from ltcat.schema import (
    ContactPoint, Corpus, IdentifierAllocator, LangText, LRStub,
    MetadataRecord, Ref, Relation, ToolService, new_record,
    resolve_relations, structural_violations, ID_PATTERN,
)

import generators


def _curator():
    return Ref(stub=generators.person(random.Random(7)))


def test_new_record_envelope(annie_record):
    rng = random.Random(1)
    entity = generators.tool(rng)
    now = dt.date(2019, 11, 29)
    record = new_record(entity, _curator(), now)
    assert record.complies_with == "ELG-SHARE"
    assert record.creation_date == record.last_updated == now
    assert record.curation_status == "claimed"
    assert ID_PATTERN.match(record.record_id.value)
    assert record.record_id.value.startswith("ELG_MDR_LOC_291119_")
    # the entity got an ENT identifier
    assert any(i.value.startswith("ELG_ENT_") for i in record.entity.lr_ids)


def test_new_record_rejects_empty_name():
    rng = random.Random(2)
    entity = generators.tool(rng)
    broken = ToolService(**{**_fields_of(entity), "names": ()})
    with pytest.raises(InvalidEntity) as exc:
        new_record(broken, _curator(), dt.date(2020, 1, 1))
    assert any("resource_name: at least one required" in v
               for v in exc.value.violations)


def test_new_record_rejects_annotated_corpus_without_types():
    rng = random.Random(3)
    corpus = generators.corpus(rng)
    broken = Corpus(**{**_fields_of(corpus), "is_annotated": True,
                       "annotation_types": (),
                       "raw_version": Ref(stub=LRStub((LangText("en", "raw"),)))})
    with pytest.raises(InvalidEntity):
        new_record(broken, _curator(), dt.date(2020, 1, 1))


def _fields_of(entity) -> dict:
    import dataclasses
    return {f.name: getattr(entity, f.name) for f in dataclasses.fields(entity)}


def test_functional_service_needs_endpoints():
    rng = random.Random(4)
    entity = generators.tool(rng)
    broken = ToolService(**{**_fields_of(entity), "is_functional_service": True,
                            "docker_download_location": None,
                            "execution_endpoint": None})
    violations = structural_violations(broken)
    assert "docker_download_location: required for a functional service" in violations
    assert "execution_endpoint: required for a functional service" in violations


def test_field_registry_tool_and_corpus():
    tool_reg = dict(field_registry("ToolService"))
    assert tool_reg["functions"] == "mandatory"
    corpus_reg = dict(field_registry("Corpus"))
    assert corpus_reg["annotation_types"] == "mandatory-if-applicable"
    with pytest.raises(UnknownSubtype):
        field_registry("Unknown")


def test_field_registry_total_and_unique():
    for subtype in ("ToolService", "Corpus", "LexicalConceptualResource",
                    "LanguageDescription", "Organization", "Person", "Project",
                    "Document", "LicenceTerms"):
        registry = field_registry(subtype)
        paths = [p for p, _ in registry]
        assert len(paths) == len(set(paths))
        assert ("creation_date", "mandatory") in registry


def test_resolve_relations_appendix_empty(annie_record):
    # the appendix-style record carries no relation-shaped links
    assert resolve_relations(annie_record, {}) == []


def test_resolve_relations_raw_version_lookup():
    rng = random.Random(5)
    corpus = generators.corpus(rng)
    raw_ref = Ref(record_id="ELG_MDR_LOC_010120_00000001")
    annotated = Corpus(**{**_fields_of(corpus), "is_annotated": True,
                          "annotation_types": (generators.ANNOTATIONS[0],),
                          "raw_version": raw_ref,
                          "related_docs": (), "funding_projects": (),
                          "relations": ()})
    record = new_record(annotated, _curator(), dt.date(2020, 1, 2))
    resolved = resolve_relations(record, {"ELG_MDR_LOC_010120_00000001"})
    assert resolved == [("hasRawVersion", "ELG_MDR_LOC_010120_00000001")]


def test_resolve_relations_stub_passthrough():
    # oracle: a ref-valued field count equals the output length
    rng = random.Random(6)
    ld = generators.language_description(rng)
    import dataclasses
    stub = Ref(stub=LRStub((LangText("en", "training set"),)))
    from ltcat.schema import ModelDetails, LanguageDescription
    entity = LanguageDescription(**{
        **_fields_of(ld),
        "ld_subtype": generators.MS + "model",
        "model_details": ModelDetails(training_corpus=stub, framework="pytorch"),
    })
    record = new_record(entity, _curator(), dt.date(2020, 1, 3))
    resolved = resolve_relations(record, set())
    trained = [(t, r) for t, r in resolved if t == "trainedOn"]
    assert len(trained) == 1
    assert trained[0][1] is stub

    # brute-force count of relation-shaped refs on the entity
    expected = (len(entity.related_docs) + len(entity.funding_projects)
                + len(entity.relations) + 1)  # +1 for the training corpus
    assert len(resolved) == expected


def test_allocator_serials_increase_and_observe():
    alloc = IdentifierAllocator("ABC")
    day = dt.date(2020, 5, 6)
    first = alloc.next("MDR", day)
    second = alloc.next("MDR", day)
    assert first.value.endswith("00000001")
    assert second.value.endswith("00000002")
    alloc.observe("ELG_MDR_ABC_060520_00000077")
    assert alloc.next("MDR", day).value.endswith("00000078")
    with pytest.raises(ValueError):
        IdentifierAllocator("abcd")


def test_records_are_immutable(annie_record):
    with pytest.raises(AttributeError):
        annie_record.curation_status = "validated"
    with pytest.raises(AttributeError):
        annie_record.entity.functions = ()
