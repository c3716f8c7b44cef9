"""Brute-force oracles, written independently of the indexed/production
code paths: linear scans, exhaustive enumeration, naive traversals.

Facet extraction, tokenization and the match predicate are re-derived
from the documented contracts here on purpose; the tests compare the two
routes.
"""

from __future__ import annotations

import re
from itertools import permutations

from ltcat.schema import (
    Corpus, LanguageDescription, LanguageResource, LexicalConceptualResource,
    MetadataRecord, ToolService,
)


def tokens(text: str) -> set[str]:
    return set(re.findall(r"[0-9a-z]+", text.lower()))


def record_text(record: MetadataRecord) -> str:
    entity = record.entity
    chunks = []
    for attr in ("names", "titles", "surnames", "short_names", "given_names",
                 "keywords", "descriptions"):
        chunks.extend(lt.text for lt in getattr(entity, attr, ()) or ())
    return " ".join(chunks)


def oracle_facets(record: MetadataRecord, vocabs) -> dict[str, set[str]]:
    """Facet values by a fresh reading of the entity (no index involved)."""
    entity = record.entity
    out: dict[str, set[str]] = {f: set() for f in (
        "entityKind", "lrType", "ltArea", "language", "licence", "mediaType",
        "domain", "keyword")}
    is_lr = isinstance(entity, LanguageResource)
    kind_map = {
        ToolService: "toolService", Corpus: "corpus",
        LexicalConceptualResource: "lexicalConceptualResource",
        LanguageDescription: "languageDescription",
    }
    if is_lr:
        out["entityKind"].add("languageResource")
        out["lrType"].add(kind_map[type(entity)])
    else:
        name = type(entity).__name__
        out["entityKind"].add(name[0].lower() + name[1:])

    out["ltArea"].update(getattr(entity, "functions", ()) or ())
    out["ltArea"].update(getattr(entity, "lt_areas", ()) or ())
    if getattr(entity, "lt_area", None):
        out["ltArea"].add(entity.lt_area)

    for spec in (list(getattr(entity, "input_specs", ()) or ())
                 + list(getattr(entity, "output_specs", ()) or ())):
        out["language"].update(spec.languages)
        if spec.media_type:
            out["mediaType"].add(spec.media_type)
    for part in getattr(entity, "media_parts", ()) or ():
        out["language"].update(part.languages)
        if part.media_type:
            out["mediaType"].add(part.media_type)
    out["language"].update(getattr(entity, "meta_languages", ()) or ())

    for dist in getattr(entity, "distributions", ()) or ():
        for ref in dist.licences:
            stub = ref.stub
            if stub is not None and getattr(stub, "names", ()):
                out["licence"].add(stub.names[0].text)
            elif ref.record_id:
                out["licence"].add(ref.record_id)

    out["domain"].update(getattr(entity, "domains", ()) or ())
    out["keyword"].update(kw.text.casefold()
                          for kw in getattr(entity, "keywords", ()) or ())
    return out


def closure(vocab, iri: str) -> set[str]:
    """Naive reachability over narrower links."""
    children: dict[str, list[str]] = {}
    for concept in vocab.concepts:
        if concept.broader is not None:
            children.setdefault(concept.broader, []).append(concept.iri)
    out = set()
    frontier = [iri]
    while frontier:
        cur = frontier.pop()
        if cur in out:
            continue
        out.add(cur)
        frontier.extend(children.get(cur, ()))
    return out


def facet_match(record: MetadataRecord, facet: str, value: str, vocabs) -> bool:
    values = oracle_facets(record, vocabs)[facet]
    vocab = {"ltArea": vocabs.get("lt-taxonomy"), "domain": vocabs.get("domain"),
             "mediaType": vocabs.get("media-type")}.get(facet)
    if vocab is not None and value in vocab:
        return bool(values & closure(vocab, value))
    return value in values


def search_scan(records: dict[str, MetadataRecord], text: str | None,
                filters: dict[str, list[str]], vocabs) -> set[str]:
    """Linear-scan hit set for a query (ids)."""
    hits = set()
    for rid, record in records.items():
        if text:
            doc_tokens = tokens(record_text(record))
            if not all(t in doc_tokens for t in tokens(text)):
                continue
        ok = True
        for facet, values in filters.items():
            if not values:
                continue
            if not any(facet_match(record, facet, v, vocabs) for v in values):
                ok = False
                break
        if ok:
            hits.add(rid)
    return hits


# --- matcher oracle ----------------------------------------------------------


def _primary(tag: str) -> str:
    return tag.split("-")[0].lower()


def oracle_match(tool: ToolService, resource) -> bool:
    """Direct evaluation of the documented compatibility predicate."""
    parts = getattr(resource, "media_parts", ()) or ()
    dists = getattr(resource, "distributions", ()) or ()
    for spec in tool.input_specs:
        for part in parts:
            for dist in dists:
                if spec.media_type != part.media_type:
                    continue
                if not set(spec.data_formats) & set(dist.data_formats):
                    continue
                if tool.language_dependent:
                    spec_langs = {_primary(t) for t in spec.languages}
                    part_langs = {_primary(t) for t in part.languages}
                    if not spec_langs & part_langs:
                        continue
                if spec.annotation_types:
                    available = set(getattr(resource, "annotation_types", ()) or ())
                    if not set(spec.annotation_types) <= available:
                        continue
                return True
    return False


def oracle_stage(a: ToolService, b: ToolService) -> bool:
    for out_spec in a.output_specs:
        for in_spec in b.input_specs:
            if out_spec.media_type != in_spec.media_type:
                continue
            if not set(out_spec.data_formats) & set(in_spec.data_formats):
                continue
            if b.language_dependent:
                if not ({_primary(t) for t in out_spec.languages}
                        & {_primary(t) for t in in_spec.languages}):
                    continue
            return True
    return False


def oracle_chains(tools: dict[str, ToolService], max_len: int) -> list[tuple[str, ...]]:
    """Exhaustive enumeration of valid simple chains, same order contract."""
    ids = sorted(tools)
    chains = []
    for length in range(2, max_len + 1):
        for chain in permutations(ids, length):
            if all(oracle_stage(tools[a], tools[b])
                   for a, b in zip(chain, chain[1:])):
                chains.append(chain)
    chains.sort(key=lambda c: (len(c), c))
    return chains
