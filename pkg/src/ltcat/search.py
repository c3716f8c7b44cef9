"""Faceted and full-text search with taxonomy-aware rollups.

In-process inverted index over store records. Readers work on an
immutable snapshot reference; the writer builds a modified copy and swaps
it in atomically, so queries never block behind indexing.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field as dc_field

from . import schema
from .exceptions import BadDimension, BadPage, UnknownFacet
from .schema import LanguageResource, MetadataRecord
from .store import StoredRecord
from .vocab import VocabularySet

_TOKEN = re.compile(r"[0-9a-z]+")

# Field weights for relevance (name outranks short name outranks keyword
# outranks description).
_TEXT_FIELDS = (("name", 8), ("short_name", 4), ("keyword", 2), ("description", 1))

FACET_IDS = ("entityKind", "lrType", "ltArea", "language", "licence",
             "mediaType", "domain", "keyword")

# Facets whose values live in a hierarchical vocabulary (counts roll up).
_HIERARCHICAL = {"ltArea": "lt-taxonomy", "domain": "domain",
                 "mediaType": "media-type"}

LANDSCAPE_DIMENSIONS = ("language", "ltArea", "entityKind", "licence")

SORTS = ("relevance", "name", "last_updated")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def _lang_values(entity) -> set[str]:
    out: set[str] = set()
    for spec in getattr(entity, "input_specs", ()) or ():
        out.update(spec.languages)
    for spec in getattr(entity, "output_specs", ()) or ():
        out.update(spec.languages)
    for part in getattr(entity, "media_parts", ()) or ():
        out.update(part.languages)
    out.update(getattr(entity, "meta_languages", ()) or ())
    return out


def _licence_values(entity) -> set[str]:
    out: set[str] = set()
    for dist in getattr(entity, "distributions", ()) or ():
        for ref in dist.licences:
            name = ref.display_name()
            if name:
                out.add(name)
            elif ref.record_id:
                out.add(ref.record_id)
    return out


def _lt_area_values(entity) -> set[str]:
    out: set[str] = set(getattr(entity, "functions", ()) or ())
    out.update(getattr(entity, "lt_areas", ()) or ())
    single = getattr(entity, "lt_area", None)
    if single:
        out.add(single)
    return out


def _media_values(entity) -> set[str]:
    out: set[str] = set()
    for spec in getattr(entity, "input_specs", ()) or ():
        if spec.media_type:
            out.add(spec.media_type)
    for part in getattr(entity, "media_parts", ()) or ():
        if part.media_type:
            out.add(part.media_type)
    return out


def facet_values(record: MetadataRecord, facet: str) -> set[str]:
    """Values a record contributes to one facet."""
    entity = record.entity
    if facet == "entityKind":
        kind = schema.entity_kind(entity)
        if isinstance(entity, LanguageResource):
            return {"languageResource"}
        return {kind}
    if facet == "lrType":
        if isinstance(entity, LanguageResource):
            return {schema.entity_kind(entity)}
        return set()
    if facet == "ltArea":
        return _lt_area_values(entity)
    if facet == "language":
        return _lang_values(entity)
    if facet == "licence":
        return _licence_values(entity)
    if facet == "mediaType":
        return _media_values(entity)
    if facet == "domain":
        return set(getattr(entity, "domains", ()) or ())
    if facet == "keyword":
        return {kw.text.casefold() for kw in getattr(entity, "keywords", ()) or ()}
    raise UnknownFacet(facet)


def text_fields(record: MetadataRecord) -> dict[str, str]:
    entity = record.entity
    names: list[str] = []
    for attr in ("names", "titles", "surnames"):
        names.extend(lt.text for lt in getattr(entity, attr, ()) or ())
    short = [lt.text for lt in getattr(entity, "short_names", ()) or ()]
    short.extend(lt.text for lt in getattr(entity, "given_names", ()) or ())
    keywords = [lt.text for lt in getattr(entity, "keywords", ()) or ()]
    descriptions = [lt.text for lt in getattr(entity, "descriptions", ()) or ()]
    return {
        "name": " ".join(names),
        "short_name": " ".join(short),
        "keyword": " ".join(keywords),
        "description": " ".join(descriptions),
    }


@dataclass(frozen=True)
class SearchQuery:
    text: str | None = None
    facet_filters: dict = dc_field(default_factory=dict)
    page: int = 1
    page_size: int = 20
    sort: str = "relevance"


@dataclass(frozen=True)
class FacetBucket:
    value: str
    count: int
    rolled_up: bool = False
    label: str | None = None


@dataclass(frozen=True)
class FacetResult:
    facet: str
    buckets: tuple[FacetBucket, ...]

    def as_dict(self) -> dict:
        return {"facet": self.facet,
                "buckets": [{"value": b.value, "count": b.count,
                             "rolledUp": b.rolled_up,
                             **({"label": b.label} if b.label else {})}
                            for b in self.buckets]}


@dataclass(frozen=True)
class RecordSummary:
    record_id: str
    entity_kind: str
    lr_type: str | None
    name: str
    short_name: str | None
    description: str | None
    last_updated: str
    status: str
    languages: tuple[str, ...]
    lt_areas: tuple[str, ...]
    licences: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "id": self.record_id, "entityKind": self.entity_kind,
            "lrType": self.lr_type, "name": self.name,
            "shortName": self.short_name, "description": self.description,
            "lastUpdated": self.last_updated, "status": self.status,
            "languages": list(self.languages), "ltAreas": list(self.lt_areas),
            "licences": list(self.licences),
        }


@dataclass(frozen=True)
class LandscapeView:
    dim_a: str
    dim_b: str
    cells: tuple[tuple[str, str, int], ...]

    def as_dict(self) -> dict:
        return {"a": self.dim_a, "b": self.dim_b,
                "cells": [{"a": a, "b": b, "count": n} for a, b, n in self.cells]}


def _primary_name(record: MetadataRecord) -> str:
    entity = record.entity
    for attr in ("names", "titles", "surnames"):
        items = getattr(entity, attr, ()) or ()
        for lt in items:
            if lt.lang == "en":
                return lt.text
        if items:
            return items[0].text
    return ""


def summarize(stored: StoredRecord) -> RecordSummary:
    record = stored.record
    entity = record.entity
    short = None
    shorts = getattr(entity, "short_names", ()) or ()
    if shorts:
        short = shorts[0].text
    desc = None
    descs = getattr(entity, "descriptions", ()) or ()
    if descs:
        desc = descs[0].text
    return RecordSummary(
        record_id=stored.record_id,
        entity_kind=("languageResource" if isinstance(entity, LanguageResource)
                     else schema.entity_kind(entity)),
        lr_type=(schema.entity_kind(entity)
                 if isinstance(entity, LanguageResource) else None),
        name=_primary_name(record),
        short_name=short,
        description=desc,
        last_updated=record.last_updated.isoformat(),
        status=record.curation_status,
        languages=tuple(sorted(_lang_values(entity))),
        lt_areas=tuple(sorted(_lt_area_values(entity))),
        licences=tuple(sorted(_licence_values(entity))),
    )


@dataclass(frozen=True)
class _Snapshot:
    ids: frozenset
    tokens: dict          # field -> token -> frozenset[id]
    facets: dict          # facet -> value -> frozenset[id]
    summaries: dict       # id -> RecordSummary
    names: dict           # id -> sort key
    updated: dict         # id -> iso date string


_EMPTY = _Snapshot(ids=frozenset(), tokens={f: {} for f, _ in _TEXT_FIELDS},
                   facets={f: {} for f in FACET_IDS}, summaries={}, names={},
                   updated={})


class SearchIndex:
    """Inverted index over a record store; read-your-writes in-process."""

    def __init__(self, vocabularies: VocabularySet):
        self.vocabularies = vocabularies
        self._lock = threading.Lock()
        self._snap = _EMPTY

    # -- indexing

    def attach(self, store) -> None:
        """Index current store content and subscribe to its writes."""
        self.rebuild(store)
        store.subscribe(self._on_store_event)

    def _on_store_event(self, event: str, stored: StoredRecord) -> None:
        if event == "delete" or stored.deleted:
            self.deindex(stored.record_id)
        else:
            self.index(stored)

    def rebuild(self, store) -> None:
        tokens = {f: {} for f, _ in _TEXT_FIELDS}
        facets = {f: {} for f in FACET_IDS}
        summaries: dict[str, RecordSummary] = {}
        names: dict[str, str] = {}
        updated: dict[str, str] = {}
        ids = set()
        for stored in store.all_records():
            rid = stored.record_id
            ids.add(rid)
            self._add_to(tokens, facets, summaries, names, updated, stored)
        self._snap = _Snapshot(
            ids=frozenset(ids),
            tokens={f: {t: frozenset(s) for t, s in d.items()} for f, d in tokens.items()},
            facets={f: {v: frozenset(s) for v, s in d.items()} for f, d in facets.items()},
            summaries=summaries, names=names, updated=updated)

    @staticmethod
    def _add_to(tokens, facets, summaries, names, updated, stored: StoredRecord):
        rid = stored.record_id
        record = stored.record
        for field_name, _w in _TEXT_FIELDS:
            text = text_fields(record)[field_name]
            for token in set(tokenize(text)):
                tokens[field_name].setdefault(token, set()).add(rid)
        for facet in FACET_IDS:
            for value in facet_values(record, facet):
                facets[facet].setdefault(value, set()).add(rid)
        summaries[rid] = summarize(stored)
        names[rid] = _primary_name(record).casefold()
        updated[rid] = record.last_updated.isoformat()

    def index(self, stored: StoredRecord) -> None:
        with self._lock:
            base = self._remove_copy(stored.record_id)
            tokens = {f: dict(d) for f, d in base.tokens.items()}
            facets = {f: dict(d) for f, d in base.facets.items()}
            rid = stored.record_id
            record = stored.record
            for field_name, _w in _TEXT_FIELDS:
                text = text_fields(record)[field_name]
                for token in set(tokenize(text)):
                    prev = tokens[field_name].get(token, frozenset())
                    tokens[field_name][token] = prev | {rid}
            for facet in FACET_IDS:
                for value in facet_values(record, facet):
                    prev = facets[facet].get(value, frozenset())
                    facets[facet][value] = prev | {rid}
            summaries = dict(base.summaries)
            names = dict(base.names)
            updated = dict(base.updated)
            summaries[rid] = summarize(stored)
            names[rid] = _primary_name(record).casefold()
            updated[rid] = record.last_updated.isoformat()
            self._snap = _Snapshot(ids=base.ids | {rid}, tokens=tokens,
                                   facets=facets, summaries=summaries,
                                   names=names, updated=updated)

    def _remove_copy(self, rid: str) -> _Snapshot:
        snap = self._snap
        if rid not in snap.ids:
            return snap
        tokens = {f: {t: s - {rid} for t, s in d.items() if s - {rid}}
                  for f, d in snap.tokens.items()}
        facets = {f: {v: s - {rid} for v, s in d.items() if s - {rid}}
                  for f, d in snap.facets.items()}
        summaries = {k: v for k, v in snap.summaries.items() if k != rid}
        names = {k: v for k, v in snap.names.items() if k != rid}
        updated = {k: v for k, v in snap.updated.items() if k != rid}
        return _Snapshot(ids=snap.ids - {rid}, tokens=tokens, facets=facets,
                         summaries=summaries, names=names, updated=updated)

    def deindex(self, rid: str) -> None:
        with self._lock:
            self._snap = self._remove_copy(rid)

    # -- matching helpers

    def _facet_match(self, snap: _Snapshot, facet: str, value: str) -> frozenset:
        postings = snap.facets[facet]
        vocab_id = _HIERARCHICAL.get(facet)
        if vocab_id is None:
            return postings.get(value, frozenset())
        vocab = self.vocabularies.get(vocab_id)
        if vocab is None or value not in vocab:
            return postings.get(value, frozenset())
        out: set[str] = set()
        for iri in vocab.descendants(value):
            out.update(postings.get(iri, frozenset()))
        return frozenset(out)

    def _text_match(self, snap: _Snapshot, text: str) -> tuple[frozenset, dict]:
        """(ids matching every token, per-id relevance score)."""
        terms = tokenize(text)
        if not terms:
            return snap.ids, {}
        result: set | None = None
        for term in terms:
            term_ids: set[str] = set()
            for field_name, _w in _TEXT_FIELDS:
                term_ids.update(snap.tokens[field_name].get(term, frozenset()))
            result = term_ids if result is None else result & term_ids
            if not result:
                return frozenset(), {}
        scores: dict[str, int] = {}
        for rid in result:
            score = 0
            for term in terms:
                best = 0
                for field_name, weight in _TEXT_FIELDS:
                    if rid in snap.tokens[field_name].get(term, frozenset()):
                        best = max(best, weight)
                score += best
            scores[rid] = score
        return frozenset(result), scores

    def _filtered(self, snap: _Snapshot, query: SearchQuery,
                  skip_facet: str | None = None) -> frozenset:
        base, _ = self._text_match(snap, query.text or "")
        for facet, values in query.facet_filters.items():
            if facet == skip_facet or not values:
                continue
            matched: set[str] = set()
            for value in values:
                matched.update(self._facet_match(snap, facet, value))
            base = base & matched
            if not base:
                break
        return base

    # -- public API

    def search(self, query: SearchQuery) -> tuple[list[RecordSummary],
                                                  list[FacetResult], int]:
        if query.page < 1 or not (1 <= query.page_size <= 100):
            raise BadPage(f"page {query.page}, size {query.page_size}")
        if query.sort not in SORTS:
            raise BadPage(f"unknown sort {query.sort!r}")
        for facet in query.facet_filters:
            if facet not in FACET_IDS:
                raise UnknownFacet(facet)
        snap = self._snap
        hits = self._filtered(snap, query)
        _, scores = self._text_match(snap, query.text or "")

        def sort_key(rid: str):
            if query.sort == "name":
                return (snap.names.get(rid, ""), rid)
            if query.sort == "last_updated":
                return (_desc(snap.updated.get(rid, "")), rid)
            return (-scores.get(rid, 0), _desc(snap.updated.get(rid, "")), rid)

        ordered = sorted(hits, key=sort_key)
        start = (query.page - 1) * query.page_size
        page_ids = ordered[start:start + query.page_size]
        summaries = [snap.summaries[rid] for rid in page_ids]

        facet_results = []
        for facet in FACET_IDS:
            base = self._filtered(snap, query, skip_facet=facet)
            vocab_id = _HIERARCHICAL.get(facet)
            buckets = []
            if vocab_id is None:
                for value, postings in snap.facets[facet].items():
                    count = len(postings & base)
                    if count:
                        buckets.append(FacetBucket(value=value, count=count))
            else:
                vocab = self.vocabularies.get(vocab_id)
                seen: set[str] = set()
                for value, postings in snap.facets[facet].items():
                    if not (postings & base):
                        continue
                    chain = ([value] if vocab is None or value not in vocab
                             else vocab.ancestors(value))
                    seen.update(chain)
                for value in seen:
                    count = len(self._facet_match(snap, facet, value) & base)
                    if count:
                        label = None
                        if vocab is not None and value in vocab:
                            label = vocab.get(value).pref_label()
                        buckets.append(FacetBucket(value=value, count=count,
                                                   rolled_up=True, label=label))
            buckets.sort(key=lambda b: (-b.count, b.value))
            facet_results.append(FacetResult(facet=facet, buckets=tuple(buckets)))
        return summaries, facet_results, len(hits)

    def landscape(self, dim_a: str, dim_b: str) -> LandscapeView:
        if dim_a == dim_b:
            raise BadDimension(f"dimensions must differ, got {dim_a!r} twice")
        for dim in (dim_a, dim_b):
            if dim not in LANDSCAPE_DIMENSIONS:
                raise BadDimension(dim)
        snap = self._snap
        counts: dict[tuple[str, str], set[str]] = {}
        for rid in snap.ids:
            values_a = self._dim_values(snap, dim_a, rid)
            values_b = self._dim_values(snap, dim_b, rid)
            for va in values_a:
                for vb in values_b:
                    counts.setdefault((va, vb), set()).add(rid)
        cells = tuple((a, b, len(ids)) for (a, b), ids in sorted(counts.items()))
        return LandscapeView(dim_a=dim_a, dim_b=dim_b, cells=cells)

    def _dim_values(self, snap: _Snapshot, dim: str, rid: str) -> set[str]:
        summary = snap.summaries[rid]
        if dim == "language":
            return set(summary.languages)
        if dim == "entityKind":
            return {summary.entity_kind}
        if dim == "licence":
            return set(summary.licences)
        if dim == "ltArea":
            vocab = self.vocabularies.get("lt-taxonomy")
            out: set[str] = set()
            for iri in summary.lt_areas:
                if vocab is not None and iri in vocab:
                    out.update(vocab.ancestors(iri))
                else:
                    out.add(iri)
            return out
        raise BadDimension(dim)


class _desc(str):
    """Inverts string comparison so ISO dates sort descending inside an
    ascending sort key."""

    def __lt__(self, other):
        return str.__gt__(self, other)

    def __gt__(self, other):
        return str.__lt__(self, other)

    def __le__(self, other):
        return str.__ge__(self, other)

    def __ge__(self, other):
        return str.__le__(self, other)
