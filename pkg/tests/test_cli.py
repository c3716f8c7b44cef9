import json
import pathlib
import random

import pytest
from click.testing import CliRunner

from ltcat.cli import main, parse_query
from ltcat.serialization import emit_json, emit_xml
from ltcat.vocab import load_seed_vocabularies

import generators

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture()
def runner():
    return CliRunner()


def test_validate_appendix_ok(runner):
    result = runner.invoke(main, ["validate", str(FIXTURES / "annie.xml")])
    assert result.exit_code == 0, result.output


def test_validate_bad_record_exit_2(runner, tmp_path):
    bad = (FIXTURES / "annie.xml").read_text().replace(
        "<ms:function>ms:NamedEntityRecognition</ms:function>", "").replace(
        "<ms:function>ms:PosTagging</ms:function>", "")
    path = tmp_path / "bad.xml"
    path.write_text(bad)
    result = runner.invoke(main, ["validate", str(path)])
    assert result.exit_code == 2


def test_validate_json_output_parses(runner):
    result = runner.invoke(main, ["validate", "--json", str(FIXTURES / "annie.xml")])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload[0]["isMinimalCompliant"] is True


def test_convert_to_dcat_on_tool_exit_3(runner):
    result = runner.invoke(main, ["convert", str(FIXTURES / "annie.xml"),
                                  "--to", "dcat"])
    assert result.exit_code == 3


def test_convert_to_json_and_back(runner, tmp_path, vocabs):
    result = runner.invoke(main, ["convert", str(FIXTURES / "annie.xml"),
                                  "--to", "json"])
    assert result.exit_code == 0
    obj = json.loads(result.stdout)
    tool = obj["MetadataRecord"]["DescribedEntity"]["LanguageResource"]["LRSubclass"]["ToolService"]
    assert tool["function"] == ["ms:NamedEntityRecognition", "ms:PosTagging"]
    json_path = tmp_path / "annie.json"
    json_path.write_text(result.stdout)
    back = runner.invoke(main, ["convert", str(json_path), "--to", "xml"])
    assert back.exit_code == 0
    assert "<ms:function>ms:NamedEntityRecognition</ms:function>" in back.stdout


def test_import_dry_run_counts_match_validator(runner, tmp_path, vocabs):
    rng = random.Random(95)
    source = tmp_path / "records"
    source.mkdir()
    good = 0
    for i in range(6):
        record = generators.record(rng)
        (source / f"r{i}.xml").write_text(emit_xml(record, vocabs))
        good += 1
    (source / "broken.xml").write_text("<ms:MetadataRecord><oops>")
    (source / "incomplete.json").write_text(json.dumps(
        {"MetadataRecord": {"metadataCreationDate": "2020-01-01"}}))
    result = runner.invoke(main, ["import", str(source), "--data",
                                  str(tmp_path / "store"), "--dry-run", "--json"])
    assert result.exit_code == 2  # some rejects
    summary = json.loads(result.stdout)
    assert summary["accepted"] == good
    assert summary["rejected"] == 2
    assert not (tmp_path / "store").exists()


def test_import_then_search_and_match(runner, tmp_path, vocabs):
    data_dir = tmp_path / "store"
    source = tmp_path / "records"
    source.mkdir()
    (source / "annie.xml").write_text((FIXTURES / "annie.xml").read_text())
    import dataclasses
    from ltcat.schema import MediaPart
    from ltcat.vocab import METASHARE_NS as MS
    rng = random.Random(96)
    corpus = generators.record(rng, "Corpus")
    entity = dataclasses.replace(
        corpus.entity,
        media_parts=(MediaPart(media_type=MS + "text", languages=("en",),
                               sizes=corpus.entity.media_parts[0].sizes),),
        distributions=(dataclasses.replace(
            corpus.entity.distributions[0], data_formats=(MS + "Text",)),))
    (source / "corpus.json").write_text(
        emit_json(dataclasses.replace(corpus, entity=entity), vocabs))
    imported = runner.invoke(main, ["import", str(source), "--data", str(data_dir),
                                    "--json"])
    assert imported.exit_code == 0, imported.output
    ids = {entry["file"].rsplit("/", 1)[-1]: entry["id"]
           for entry in json.loads(imported.stdout)["files"]}

    found = runner.invoke(main, ["search", "annie", "--data", str(data_dir),
                                 "--json"])
    assert found.exit_code == 0
    hits = json.loads(found.stdout)
    assert hits["total"] == 1
    assert hits["hits"][0]["id"] == ids["annie.xml"]

    faceted = runner.invoke(main, ["search", "language:en lrType:corpus",
                                   "--data", str(data_dir), "--json"])
    assert json.loads(faceted.stdout)["total"] == 1

    matched = runner.invoke(main, ["match", ids["annie.xml"], "--data",
                                   str(data_dir), "--json"])
    assert matched.exit_code == 0, matched.output
    reports = json.loads(matched.stdout)
    assert [r["resource"] for r in reports] == [ids["corpus.json"]]


def test_match_rejects_non_tool(runner, tmp_path, vocabs):
    data_dir = tmp_path / "store"
    source = tmp_path / "records"
    source.mkdir()
    rng = random.Random(97)
    record = generators.record(rng, "Corpus")
    (source / "c.xml").write_text(emit_xml(record, vocabs))
    imported = runner.invoke(main, ["import", str(source), "--data",
                                    str(data_dir), "--json"])
    corpus_id = json.loads(imported.stdout)["files"][0]["id"]
    result = runner.invoke(main, ["match", corpus_id, "--data", str(data_dir)])
    assert result.exit_code == 3


def test_taxonomy_check(runner, tmp_path):
    good = tmp_path / "ok.vocab"
    good.write_text("vocabulary t\n\niri http://e.org/x\nprefLabel@en X\n")
    assert runner.invoke(main, ["taxonomy", "check", str(good)]).exit_code == 0
    bad = tmp_path / "bad.vocab"
    bad.write_text("vocabulary t\n\niri http://e.org/x\n")
    assert runner.invoke(main, ["taxonomy", "check", str(bad)]).exit_code == 2


def test_harvest_unknown_source_exit_1(runner, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"data_dir": str(tmp_path / "d"), "sources": []}))
    result = runner.invoke(main, ["harvest", "nowhere", "--config", str(config)])
    assert result.exit_code == 1


def test_harvest_unreachable_exit_5(runner, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({
        "data_dir": str(tmp_path / "d"),
        "sources": [{"id": "s", "url": "http://127.0.0.1:1/feed"}]}))
    result = runner.invoke(main, ["harvest", "s", "--config", str(config)])
    assert result.exit_code == 5


def test_missing_file_exit_4(runner):
    result = runner.invoke(main, ["validate", "/no/such/file.xml"])
    assert result.exit_code == 4


def test_usage_error_exit_1(runner):
    result = runner.invoke(main, ["convert", "x.xml"])  # missing --to
    assert result.exit_code != 0


def test_parse_query_grammar():
    query = parse_query("annie language:en language:de ltArea:http://x unknown:y")
    assert query.text == "annie unknown:y"
    assert query.facet_filters == {"language": ["en", "de"],
                                   "ltArea": ["http://x"]}


def test_cli_and_library_reports_identical(runner, vocabs):
    from ltcat.serialization import parse_xml
    from ltcat.validation import validate_import
    result = runner.invoke(main, ["validate", "--json", str(FIXTURES / "annie.xml")])
    cli_report = json.loads(result.stdout)[0]
    cli_report.pop("file")
    _, lib_report = validate_import(
        parse_xml((FIXTURES / "annie.xml").read_text()), vocabs)
    assert cli_report == lib_report.as_dict()
