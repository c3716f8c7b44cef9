"""Operator CLI: batch import, validation, conversion, search, matching,
harvesting, taxonomy upkeep and serving.

Exit codes: 0 ok, 1 usage, 2 validation failure, 3 conversion
precondition, 4 I/O, 5 remote. Human-readable findings go to stderr;
``--json`` puts machine output on stdout.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .config import load_config
from .crosswalks import to_dcat, to_schema_org
from .exceptions import (
    LtcatError, NotADataResource, NotCompliant, ParseError, CycleError,
    DanglingBroaderError, SourceUnavailable, UnknownSource,
)
from .harvest import Harvester
from .matcher import candidates as match_candidates, compose as compose_pipelines
from .schema import ToolService
from .search import FACET_IDS, SearchIndex, SearchQuery
from .serialization import (
    default_bindings, emit_json, emit_jsonld, emit_xml, parse_json, parse_xml,
)
from .store import Store
from .validation import validate_tree
from .vocab import load_seed_vocabularies, parse_vocabulary, propose_keywords

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_CONVERSION = 3
EXIT_IO = 4
EXIT_REMOTE = 5


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_IO)


def _parse_record_text(text: str, fmt: str):
    if fmt == "xml":
        return parse_xml(text)
    return parse_json(text)


def _guess_format(path: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "json" if path.endswith(".json") else "xml"


def _open_store(data_dir: str, vocabularies):
    return Store(data_dir, vocabularies=vocabularies)


@click.group()
def main():
    """Catalogue toolkit for language-resource metadata records."""


@main.command()
@click.argument("files", nargs=-1, required=True)
@click.option("--format", "fmt", type=click.Choice(["xml", "json"]), default=None,
              help="Input format (default: by file extension).")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable reports on stdout.")
def validate(files, fmt, as_json):
    """Validate record files against the minimal profile."""
    vocabularies = load_seed_vocabularies()
    all_ok = True
    reports = []
    for path in files:
        text = _read_file(path)
        try:
            tree = _parse_record_text(text, _guess_format(path, fmt))
            _record, report = validate_tree(tree, vocabularies)
        except LtcatError as exc:
            all_ok = False
            reports.append({"file": path, "error": str(exc)})
            click.echo(f"{path}: {exc}", err=True)
            continue
        reports.append({"file": path, **report.as_dict()})
        click.echo(f"== {path}", err=True)
        click.echo(report.as_text(), err=True)
        if not report.is_minimal_compliant:
            all_ok = False
    if as_json:
        click.echo(json.dumps(reports, indent=2, sort_keys=True))
    sys.exit(EXIT_OK if all_ok else EXIT_VALIDATION)


@main.command(name="import")
@click.argument("directory")
@click.option("--data", "data_dir", required=True, help="Store data directory.")
@click.option("--dry-run", is_flag=True, help="Validate only; store nothing.")
@click.option("--json", "as_json", is_flag=True)
def import_cmd(directory, data_dir, dry_run, as_json):
    """Batch-import every record file in a directory."""
    vocabularies = load_seed_vocabularies()
    root = Path(directory)
    if not root.is_dir():
        click.echo(f"not a directory: {directory}", err=True)
        sys.exit(EXIT_IO)
    store = None if dry_run else _open_store(data_dir, vocabularies)
    accepted = rejected = 0
    details = []
    files = sorted(list(root.glob("*.xml")) + list(root.glob("*.json")))
    for path in files:
        text = _read_file(str(path))
        try:
            tree = _parse_record_text(text, _guess_format(str(path), None))
            record, report = validate_tree(tree, vocabularies)
        except LtcatError as exc:
            rejected += 1
            details.append({"file": str(path), "ok": False, "error": str(exc)})
            click.echo(f"{path}: {exc}", err=True)
            continue
        if record is None:
            rejected += 1
            details.append({"file": str(path), "ok": False, **report.as_dict()})
            click.echo(f"{path}: NOT compliant "
                       f"({len(report.errors())} error(s))", err=True)
            continue
        accepted += 1
        entry = {"file": str(path), "ok": True}
        if store is not None:
            record_id = store.put(record, actor="cli-import")
            entry["id"] = record_id.value
        details.append(entry)
    summary = {"accepted": accepted, "rejected": rejected,
               "dryRun": dry_run, "files": details}
    click.echo(f"accepted {accepted}, rejected {rejected}"
               f"{' (dry run)' if dry_run else ''}", err=True)
    if as_json:
        click.echo(json.dumps(summary, indent=2, sort_keys=True))
    sys.exit(EXIT_OK if rejected == 0 else EXIT_VALIDATION)


@main.command()
@click.argument("file")
@click.option("--to", "target", required=True,
              type=click.Choice(["xml", "json", "jsonld", "dcat", "schemaorg"]))
@click.option("--format", "fmt", type=click.Choice(["xml", "json"]), default=None)
def convert(file, target, fmt):
    """Convert a record file to another serialization (stdout)."""
    vocabularies = load_seed_vocabularies()
    text = _read_file(file)
    try:
        tree = _parse_record_text(text, _guess_format(file, fmt))
        record, report = validate_tree(tree, vocabularies)
        if record is None:
            click.echo(report.as_text(), err=True)
            sys.exit(EXIT_VALIDATION)
        if target == "xml":
            out = emit_xml(record, vocabularies)
        elif target == "json":
            out = emit_json(record, vocabularies)
        elif target == "jsonld":
            out = emit_jsonld(record, default_bindings(vocabularies), vocabularies)
        elif target == "dcat":
            out = to_dcat(record, vocabularies)
        else:
            out = to_schema_org(record, vocabularies)
    except NotADataResource as exc:
        click.echo(f"conversion precondition failed: {exc}", err=True)
        sys.exit(EXIT_CONVERSION)
    except NotCompliant as exc:
        click.echo(exc.report.as_text(), err=True)
        sys.exit(EXIT_VALIDATION)
    except LtcatError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_VALIDATION)
    click.echo(out, nl=False)
    sys.exit(EXIT_OK)


def parse_query(text: str) -> SearchQuery:
    """Query grammar: bare terms plus field:value filters (field one of the
    facet ids)."""
    terms = []
    filters: dict[str, list[str]] = {}
    for token in text.split():
        if ":" in token:
            field, _, value = token.partition(":")
            if field in FACET_IDS:
                filters.setdefault(field, []).append(value)
                continue
        terms.append(token)
    return SearchQuery(text=" ".join(terms) or None, facet_filters=filters,
                       page=1, page_size=50)


@main.command()
@click.argument("query")
@click.option("--data", "data_dir", required=True)
@click.option("--json", "as_json", is_flag=True)
def search(query, data_dir, as_json):
    """Search the catalogue ("annie language:en ltArea:<iri>")."""
    vocabularies = load_seed_vocabularies()
    store = _open_store(data_dir, vocabularies)
    index = SearchIndex(vocabularies)
    index.rebuild(store)
    hits, facets, total = index.search(parse_query(query))
    if as_json:
        click.echo(json.dumps({"total": total,
                               "hits": [h.as_dict() for h in hits],
                               "facets": [f.as_dict() for f in facets]},
                              indent=2, sort_keys=True))
    else:
        click.echo(f"{total} hit(s)", err=True)
        for hit in hits:
            click.echo(f"{hit.record_id}  {hit.name}")
    sys.exit(EXIT_OK)


@main.command()
@click.argument("tool_id")
@click.option("--data", "data_dir", required=True)
@click.option("--json", "as_json", is_flag=True)
def match(tool_id, data_dir, as_json):
    """List candidate input resources for a tool."""
    vocabularies = load_seed_vocabularies()
    store = _open_store(data_dir, vocabularies)
    try:
        stored = store.get(tool_id)
    except LtcatError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_IO)
    if not isinstance(stored.record.entity, ToolService):
        click.echo(f"{tool_id} is not a tool/service", err=True)
        sys.exit(EXIT_CONVERSION)
    catalogue = [s.record for s in store.all_records()]
    reports = match_candidates(stored.record, catalogue)
    if as_json:
        click.echo(json.dumps([r.as_dict() for r in reports], indent=2, sort_keys=True))
    else:
        for report in reports:
            ev = report.matched_on
            click.echo(f"{report.resource_id}  lang={ev.language or '*'} "
                       f"format={ev.data_format.rsplit('/', 1)[-1]}")
        click.echo(f"{len(reports)} compatible resource(s)", err=True)
    sys.exit(EXIT_OK)


@main.command()
@click.option("--tools", required=True, help="Comma-separated tool record ids.")
@click.option("--max-len", "max_len", default=3, show_default=True)
@click.option("--data", "data_dir", required=True)
@click.option("--json", "as_json", is_flag=True)
def compose(tools, max_len, data_dir, as_json):
    """Compose candidate tool pipelines."""
    vocabularies = load_seed_vocabularies()
    store = _open_store(data_dir, vocabularies)
    records = {}
    for tool_id in tools.split(","):
        tool_id = tool_id.strip()
        try:
            records[tool_id] = store.get(tool_id).record
        except LtcatError as exc:
            click.echo(str(exc), err=True)
            sys.exit(EXIT_IO)
    try:
        pipelines = compose_pipelines(records, max_len)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_USAGE)
    if as_json:
        click.echo(json.dumps([p.as_dict() for p in pipelines], indent=2,
                              sort_keys=True))
    else:
        for pipeline in pipelines:
            click.echo(" -> ".join(pipeline.tools))
        click.echo(f"{len(pipelines)} pipeline(s)", err=True)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("source_id")
@click.option("--config", "config_path", required=True)
@click.option("--json", "as_json", is_flag=True)
def harvest(source_id, config_path, as_json):
    """Run one harvest against a configured source."""
    config = load_config(config_path)
    vocabularies = load_seed_vocabularies(config.vocabulary_dir)
    store = Store(config.data_dir, vocabularies=vocabularies,
                  source_code=config.source_code)
    harvester = Harvester(store, vocabularies, sources=list(config.sources))
    try:
        run = harvester.harvest(source_id)
    except UnknownSource as exc:
        click.echo(f"unknown source: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    except SourceUnavailable as exc:
        click.echo(f"source unavailable: {exc}", err=True)
        sys.exit(EXIT_REMOTE)
    click.echo(f"fetched {run.fetched}, accepted {run.accepted}, "
               f"rejected {run.rejected}, duplicates {run.duplicates}", err=True)
    if as_json:
        click.echo(json.dumps(run.as_dict(), indent=2, sort_keys=True))
    sys.exit(EXIT_OK)


@main.command()
@click.option("--config", "config_path", default=None)
def serve(config_path):
    """Run the REST service."""
    from .api import run as run_api
    config = load_config(config_path)
    run_api(config)


@main.group()
def taxonomy():
    """Vocabulary maintenance."""


@taxonomy.command()
@click.argument("vocab_file")
def check(vocab_file):
    """Parse and verify a vocabulary file."""
    text = _read_file(vocab_file)
    try:
        vocab = parse_vocabulary(text)
    except (ParseError, CycleError, DanglingBroaderError) as exc:
        click.echo(f"invalid vocabulary: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)
    roots = len(vocab.roots())
    click.echo(f"{vocab.id}: {len(vocab.concepts)} concept(s), {roots} root(s)")
    sys.exit(EXIT_OK)


@taxonomy.command()
@click.option("--min-count", "min_count", default=2, show_default=True)
@click.option("--data", "data_dir", required=True)
@click.option("--json", "as_json", is_flag=True)
def candidates(min_count, data_dir, as_json):
    """Propose keyword promotions into the LT taxonomy."""
    vocabularies = load_seed_vocabularies()
    store = _open_store(data_dir, vocabularies)
    records = [s.record for s in store.all_records()]
    cands = propose_keywords(records, min_count, vocabularies["lt-taxonomy"])
    if as_json:
        click.echo(json.dumps([{
            "keyword": c.keyword, "occurrenceCount": c.occurrence_count,
            "coOccurring": list(c.co_occurring)} for c in cands],
            indent=2, sort_keys=True))
    else:
        for cand in cands:
            click.echo(f"{cand.keyword}  ({cand.occurrence_count} records)")
        click.echo(f"{len(cands)} candidate(s)", err=True)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
