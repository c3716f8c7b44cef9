import dataclasses
import random

import pytest

from ltcat.matcher import (
    CompatibilityReport, candidates, compose, match,
)
from ltcat.schema import (
    Corpus, DataDistribution, IOSpec, LangText, MediaPart, Ref,
    SoftwareDistribution, ToolService,
)
from ltcat.vocab import METASHARE_NS as MS

import generators
import oracles


def _tool(rng, languages=("en",), in_formats=("Text",), out_formats=("Json",),
          language_dependent=True, required_annotations=()):
    base = generators.tool(rng)
    input_spec = IOSpec(processing_resource_type=MS + "file",
                        languages=tuple(languages),
                        media_type=MS + "text",
                        data_formats=tuple(MS + f for f in in_formats),
                        annotation_types=tuple(MS + a for a in required_annotations))
    output_spec = IOSpec(languages=tuple(languages), media_type=MS + "text",
                         data_formats=tuple(MS + f for f in out_formats))
    return dataclasses.replace(base, language_dependent=language_dependent,
                               input_specs=(input_spec,),
                               output_specs=(output_spec,))


def _corpus(rng, languages=("en",), formats=("Text",), annotations=()):
    base = generators.corpus(rng)
    part = MediaPart(media_type=MS + "text", languages=tuple(languages),
                     sizes=base.media_parts[0].sizes)
    dist = DataDistribution(form=MS + "downloadableFile",
                            access_location="https://example.org/d",
                            data_formats=tuple(MS + f for f in formats),
                            licences=base.distributions[0].licences)
    annotated = bool(annotations)
    return dataclasses.replace(
        base, media_parts=(part,), distributions=(dist,),
        is_annotated=annotated,
        annotation_types=tuple(MS + a for a in annotations),
        raw_version=base.raw_version if not annotated or base.raw_version
        else Ref(stub=generators._lr_stub(rng)))


def _record(rng, entity):
    record = generators.record(rng, "ToolService")
    return dataclasses.replace(record, entity=entity)


def test_pdf_tool_matches_pdf_dataset():
    rng = random.Random(51)
    tool = _record(rng, _tool(rng, in_formats=("Pdf",)))
    dataset = _record(rng, _corpus(rng, formats=("Pdf",)))
    report = match(tool, dataset)
    assert report.compatible
    assert report.matched_on.data_format == MS + "Pdf"


def test_annie_style_match(vocabs, annie_record):
    rng = random.Random(52)
    corpus = _record(rng, _corpus(rng, languages=("en",), formats=("Text",)))
    report = match(annie_record, corpus, vocabs)
    assert report.compatible
    assert report.matched_on.language == "en"
    assert report.matched_on.media_type == MS + "text"
    assert report.matched_on.data_format == MS + "Text"


def test_language_mismatch(annie_record):
    rng = random.Random(53)
    french = _record(rng, _corpus(rng, languages=("fr",), formats=("Text",)))
    report = match(annie_record, french)
    assert not report.compatible
    assert any(f.dimension == "language" for f in report.failures)


def test_primary_subtag_matching():
    rng = random.Random(54)
    tool = _record(rng, _tool(rng, languages=("en",)))
    dataset = _record(rng, _corpus(rng, languages=("en-GB",)))
    assert match(tool, dataset).compatible


def test_language_independent_tool_ignores_language():
    rng = random.Random(55)
    tool = _record(rng, _tool(rng, languages=(), language_dependent=False))
    dataset = _record(rng, _corpus(rng, languages=("fi",)))
    report = match(tool, dataset)
    assert report.compatible
    assert report.matched_on.language is None


def test_annotation_requirement_gates_match():
    rng = random.Random(56)
    tool = _record(rng, _tool(rng, required_annotations=("NamedEntity",)))
    plain = _record(rng, _corpus(rng))
    annotated = _record(rng, _corpus(rng, annotations=("NamedEntity", "Date")))
    assert not match(tool, plain).compatible
    assert match(tool, annotated).compatible


def test_monotonicity_adding_format_never_breaks():
    rng = random.Random(57)
    tool_entity = _tool(rng, in_formats=("Text",))
    dataset = _record(rng, _corpus(rng, formats=("Text",)))
    tool = _record(rng, tool_entity)
    assert match(tool, dataset).compatible
    richer_spec = dataclasses.replace(
        tool_entity.input_specs[0],
        data_formats=tool_entity.input_specs[0].data_formats + (MS + "Pdf",))
    richer = _record(rng, dataclasses.replace(tool_entity,
                                              input_specs=(richer_spec,)))
    assert match(richer, dataset).compatible


def test_candidates_empty_and_sorted(fresh_store):
    rng = random.Random(58)
    tool = _record(rng, _tool(rng))
    assert candidates(tool, []) == []
    no_inputs = _record(rng, dataclasses.replace(_tool(rng), input_specs=()))
    assert candidates(no_inputs, [_record(rng, _corpus(rng))]) == []


def test_candidates_equal_bruteforce_pairwise():
    rng = random.Random(59)
    tools = [_record(rng, generators.tool(rng)) for _ in range(12)]
    datasets = []
    for i in range(30):
        record = generators.record(rng, rng.choice(
            ["Corpus", "LexicalConceptualResource", "LanguageDescription"]))
        record = dataclasses.replace(
            record, record_id=generators.record(rng, with_id=True).record_id)
        datasets.append(record)
    for tool in tools:
        got = {r.resource_id for r in candidates(tool, datasets)}
        expected = {d.record_id.value for d in datasets
                    if oracles.oracle_match(tool.entity, d.entity)}
        assert got == expected
        ordered = [r.resource_id for r in candidates(tool, datasets)]
        assert ordered == sorted(ordered)


def test_every_match_reports_witness():
    rng = random.Random(60)
    tools = [_record(rng, generators.tool(rng)) for _ in range(10)]
    datasets = [generators.record(rng, "Corpus") for _ in range(10)]
    for tool in tools:
        for dataset in datasets:
            report = match(tool, dataset)
            if report.compatible:
                ev = report.matched_on
                assert ev is not None and ev.media_type and ev.data_format
                assert not report.failures
            else:
                assert report.matched_on is None and report.failures


def _chain_tools(rng):
    """Small tool set with known chain structure."""
    tokenizer = _tool(rng, languages=("en",), in_formats=("PlainText",),
                      out_formats=("Text",))
    tagger = _tool(rng, languages=("en",), in_formats=("Text",),
                   out_formats=("Conllu",))
    ner = _tool(rng, languages=("en",), in_formats=("Conllu",),
                out_formats=("Json",))
    return {"T1": _record(rng, tokenizer), "T2": _record(rng, tagger),
            "T3": _record(rng, ner)}


def test_compose_hand_checkable_chain():
    rng = random.Random(61)
    tools = _chain_tools(rng)
    pipelines = compose(tools, max_len=3)
    chains = [p.tools for p in pipelines]
    # tokenizer -> tagger, tagger -> ner, and the full 3-chain
    assert ("T1", "T2") in chains
    assert ("T2", "T3") in chains
    assert ("T1", "T2", "T3") in chains
    assert ("T1", "T3") not in chains
    full = next(p for p in pipelines if p.tools == ("T1", "T2", "T3"))
    assert full.languages == ("en",)
    assert full.stage_formats == (MS + "Text", MS + "Conllu")


def test_compose_disjoint_formats_empty():
    rng = random.Random(62)
    a = _tool(rng, in_formats=("Text",), out_formats=("Text",))
    b = _tool(rng, in_formats=("Wav",), out_formats=("Mp3",))
    b = dataclasses.replace(b, input_specs=(dataclasses.replace(
        b.input_specs[0], media_type=MS + "audio",
        data_formats=(MS + "Wav",)),))
    assert compose({"A": _record(rng, a), "B": _record(rng, b)}, 3) == []


def test_compose_equals_exhaustive_enumeration():
    rng = random.Random(63)
    tools = {f"T{i}": _record(rng, generators.tool(rng)) for i in range(6)}
    for max_len in (2, 3, 4):
        expected = oracles.oracle_chains(
            {k: v.entity for k, v in tools.items()}, max_len)
        got = [p.tools for p in compose(tools, max_len)]
        assert got == expected


def test_compose_validates_stagewise():
    rng = random.Random(64)
    tools = {f"T{i}": _record(rng, generators.tool(rng)) for i in range(5)}
    for pipeline in compose(tools, 4):
        for a, b in zip(pipeline.tools, pipeline.tools[1:]):
            assert oracles.oracle_stage(tools[a].entity, tools[b].entity)


def test_compose_max_len_bounds():
    with pytest.raises(ValueError):
        compose({}, 1)
    with pytest.raises(ValueError):
        compose({}, 6)
