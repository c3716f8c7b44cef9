"""Typed entity model: metadata record envelope, language resources and
their satellite entities.

All types are immutable after construction (sequences normalized to
tuples), so records can be shared freely across threads. Structural
invariants are *checked*, not enforced by construction: builders such as
the import validator need to assemble partially complete values, and
:func:`new_record` is the gate that refuses structurally broken entities.
"""

from __future__ import annotations

import datetime as _dt
import re
import threading
from dataclasses import dataclass, replace

from .exceptions import InvalidEntity
from .langtag import is_well_formed

SCHEMA_NAME = "ELG-SHARE"

CURATION_STATUSES = ("ingested", "claimed", "curated", "validated")

# Media types form a closed five-value set; IRIs live in the media-type
# vocabulary, these are the local names.
MEDIA_TYPES = ("text", "audio", "image", "video", "numericalText")

ID_PATTERN = re.compile(r"^ELG_(MDR|ENT)_[A-Z]{3}_\d{6}_\d{8}$")


def _tup(value) -> tuple:
    if value is None:
        return ()
    return tuple(value)


def concept_local_name(iri: str) -> str:
    """Trailing segment of a concept IRI ("…/model" -> "model")."""
    return iri.rsplit("/", 1)[-1].rsplit("#", 1)[-1]


@dataclass(frozen=True)
class LangText:
    """One language-tagged string."""

    lang: str
    text: str


def _langset(value) -> tuple[LangText, ...]:
    """Normalize single-valued multilingual fields: one text per language,
    sorted by language tag so equal content compares equal."""
    items = _tup(value)
    by_lang: dict[str, LangText] = {}
    for it in items:
        by_lang[it.lang] = it
    return tuple(sorted(by_lang.values(), key=lambda lt: lt.lang))


@dataclass(frozen=True)
class Identifier:
    """(scheme, value) pair; scheme "elg" values follow the catalogue pattern."""

    scheme: str
    value: str


@dataclass(frozen=True)
class ContactPoint:
    """Further-information pointer: a landing page URL or an email."""

    kind: str  # "landingPage" | "email"
    value: str


@dataclass(frozen=True)
class LRStub:
    """Name-only stand-in for a language resource not (yet) in the catalogue."""

    names: tuple[LangText, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "names", _langset(self.names))


@dataclass(frozen=True)
class Ref:
    """Reference to another entity: a catalogue record id, an inline stub,
    or both (stub kept for display, id for resolution)."""

    record_id: str | None = None
    stub: object | None = None

    def is_resolvable(self) -> bool:
        return self.record_id is not None

    def display_name(self) -> str | None:
        stub = self.stub
        if stub is None:
            return None
        for attr in ("names", "surnames", "titles"):
            items = getattr(stub, attr, None)
            if items:
                return items[0].text
        return None


@dataclass(frozen=True)
class Relation:
    """(relation-type, target) link between language resources."""

    type: str
    target: Ref


@dataclass(frozen=True)
class Size:
    amount: float
    unit: str  # size-unit concept IRI


@dataclass(frozen=True, kw_only=True)
class IOSpec:
    """What a tool consumes or produces: medium, languages, formats."""

    processing_resource_type: str | None = None  # concept IRI
    languages: tuple[str, ...] = ()
    media_type: str | None = None  # media-type concept IRI
    data_formats: tuple[str, ...] = ()
    annotation_types: tuple[str, ...] = ()
    character_encodings: tuple[str, ...] = ()

    def __post_init__(self):
        for name in ("languages", "data_formats", "annotation_types", "character_encodings"):
            object.__setattr__(self, name, _tup(getattr(self, name)))


@dataclass(frozen=True, kw_only=True)
class MediaPart:
    """One physical-medium part of a data resource."""

    media_type: str | None = None
    languages: tuple[str, ...] = ()
    sizes: tuple[Size, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "languages", _tup(self.languages))
        object.__setattr__(self, "sizes", _tup(self.sizes))


@dataclass(frozen=True, kw_only=True)
class DataDistribution:
    """Deliverable form of a data resource."""

    form: str | None = None  # distribution-form concept IRI
    access_location: str | None = None
    data_formats: tuple[str, ...] = ()
    sizes: tuple[Size, ...] = ()
    licences: tuple[Ref, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "data_formats", _tup(self.data_formats))
        object.__setattr__(self, "sizes", _tup(self.sizes))
        object.__setattr__(self, "licences", _tup(self.licences))


@dataclass(frozen=True, kw_only=True)
class SoftwareDistribution:
    """Deliverable form of a tool/service (docker image, web service, ...)."""

    form: str | None = None
    download_location: str | None = None
    access_location: str | None = None
    digest: str | None = None
    licences: tuple[Ref, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "licences", _tup(self.licences))


@dataclass(frozen=True, kw_only=True)
class ModelDetails:
    training_corpus: Ref | None = None
    framework: str | None = None


@dataclass(frozen=True, kw_only=True)
class LanguageResource:
    """Fields shared by every language resource kind."""

    names: tuple[LangText, ...] = ()
    short_names: tuple[LangText, ...] = ()
    descriptions: tuple[LangText, ...] = ()
    lr_ids: tuple[Identifier, ...] = ()
    version: str | None = None
    additional_info: tuple[ContactPoint, ...] = ()
    contacts: tuple[Ref, ...] = ()
    keywords: tuple[LangText, ...] = ()
    domains: tuple[str, ...] = ()
    resource_provider: Ref | None = None
    validated: bool = False
    related_docs: tuple[Ref, ...] = ()
    funding_projects: tuple[Ref, ...] = ()
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "names", _langset(self.names))
        object.__setattr__(self, "short_names", _langset(self.short_names))
        object.__setattr__(self, "descriptions", _langset(self.descriptions))
        for name in ("lr_ids", "additional_info", "contacts", "keywords",
                     "domains", "related_docs", "funding_projects", "relations"):
            object.__setattr__(self, name, _tup(getattr(self, name)))


@dataclass(frozen=True, kw_only=True)
class ToolService(LanguageResource):
    functions: tuple[str, ...] = ()  # LT taxonomy concept IRIs
    language_dependent: bool = True
    hw_sw_requirements: str | None = None
    input_specs: tuple[IOSpec, ...] = ()
    output_specs: tuple[IOSpec, ...] = ()
    ancillary_resources: tuple[Ref, ...] = ()
    is_functional_service: bool = False
    docker_download_location: str | None = None
    execution_endpoint: str | None = None
    image_digest: str | None = None
    distributions: tuple[SoftwareDistribution, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        for name in ("functions", "input_specs", "output_specs",
                     "ancillary_resources", "distributions"):
            object.__setattr__(self, name, _tup(getattr(self, name)))


@dataclass(frozen=True, kw_only=True)
class Corpus(LanguageResource):
    is_annotated: bool = False
    annotation_types: tuple[str, ...] = ()
    raw_version: Ref | None = None
    text_genres: tuple[str, ...] = ()
    audio_genres: tuple[str, ...] = ()
    text_types: tuple[str, ...] = ()
    media_parts: tuple[MediaPart, ...] = ()
    distributions: tuple[DataDistribution, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        for name in ("annotation_types", "text_genres", "audio_genres",
                     "text_types", "media_parts", "distributions"):
            object.__setattr__(self, name, _tup(getattr(self, name)))


@dataclass(frozen=True, kw_only=True)
class LexicalConceptualResource(LanguageResource):
    lcr_subtype: str | None = None
    meta_languages: tuple[str, ...] = ()
    basic_unit: str | None = None
    encoding_info: tuple[str, ...] = ()
    media_parts: tuple[MediaPart, ...] = ()
    distributions: tuple[DataDistribution, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        for name in ("meta_languages", "encoding_info", "media_parts", "distributions"):
            object.__setattr__(self, name, _tup(getattr(self, name)))


@dataclass(frozen=True, kw_only=True)
class LanguageDescription(LanguageResource):
    ld_subtype: str | None = None
    meta_languages: tuple[str, ...] = ()
    encoding_info: tuple[str, ...] = ()
    model_details: ModelDetails | None = None
    media_parts: tuple[MediaPart, ...] = ()
    distributions: tuple[DataDistribution, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        for name in ("meta_languages", "encoding_info", "media_parts", "distributions"):
            object.__setattr__(self, name, _tup(getattr(self, name)))


@dataclass(frozen=True, kw_only=True)
class Organization:
    names: tuple[LangText, ...] = ()
    identifiers: tuple[Identifier, ...] = ()
    email: str | None = None
    website: str | None = None
    logo: str | None = None
    lt_areas: tuple[str, ...] = ()
    promotional_urls: tuple[str, ...] = ()
    members: tuple[Ref, ...] = ()
    kind: str = "organization"  # "organization" | "group"

    def __post_init__(self):
        object.__setattr__(self, "names", _langset(self.names))
        for name in ("identifiers", "lt_areas", "promotional_urls", "members"):
            object.__setattr__(self, name, _tup(getattr(self, name)))


@dataclass(frozen=True, kw_only=True)
class Person:
    surnames: tuple[LangText, ...] = ()
    given_names: tuple[LangText, ...] = ()
    identifiers: tuple[Identifier, ...] = ()
    email: str | None = None
    affiliation: Ref | None = None

    def __post_init__(self):
        object.__setattr__(self, "surnames", _langset(self.surnames))
        object.__setattr__(self, "given_names", _langset(self.given_names))
        object.__setattr__(self, "identifiers", _tup(self.identifiers))


@dataclass(frozen=True, kw_only=True)
class Project:
    titles: tuple[LangText, ...] = ()
    identifiers: tuple[Identifier, ...] = ()
    grant_id: str | None = None
    funder: Ref | None = None
    website: str | None = None
    lt_areas: tuple[str, ...] = ()
    related_lrs: tuple[Ref, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "titles", _langset(self.titles))
        for name in ("identifiers", "lt_areas", "related_lrs"):
            object.__setattr__(self, name, _tup(getattr(self, name)))


@dataclass(frozen=True, kw_only=True)
class Document:
    titles: tuple[LangText, ...] = ()
    authors: tuple[str, ...] = ()
    identifiers: tuple[Identifier, ...] = ()
    year: int | None = None
    venue: str | None = None
    lt_area: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "titles", _langset(self.titles))
        object.__setattr__(self, "authors", _tup(self.authors))
        object.__setattr__(self, "identifiers", _tup(self.identifiers))


@dataclass(frozen=True, kw_only=True)
class LicenceTerms:
    names: tuple[LangText, ...] = ()
    identifiers: tuple[Identifier, ...] = ()
    access_url: str | None = None
    conditions_of_use: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "names", _langset(self.names))
        object.__setattr__(self, "identifiers", _tup(self.identifiers))
        object.__setattr__(self, "conditions_of_use", _tup(self.conditions_of_use))


LR_CLASSES = (ToolService, Corpus, LexicalConceptualResource, LanguageDescription)
SATELLITE_CLASSES = (Organization, Person, Project, Document, LicenceTerms)
ENTITY_CLASSES = LR_CLASSES + SATELLITE_CLASSES

# Closed subtype token set; field_registry and the API use these names.
SUBTYPES = tuple(cls.__name__ for cls in ENTITY_CLASSES)

ENTITY_KIND_TOKENS = {
    ToolService: "toolService",
    Corpus: "corpus",
    LexicalConceptualResource: "lexicalConceptualResource",
    LanguageDescription: "languageDescription",
    Organization: "organization",
    Person: "person",
    Project: "project",
    Document: "document",
    LicenceTerms: "licenceTerms",
}


def entity_kind(entity) -> str:
    """Lower-camel kind token for a described entity ("toolService", ...)."""
    try:
        return ENTITY_KIND_TOKENS[type(entity)]
    except KeyError:
        raise InvalidEntity([f"not a described entity: {type(entity).__name__}"])


def subtype_of(entity) -> str:
    return type(entity).__name__


@dataclass(frozen=True)
class Provenance:
    """Where a harvested record came from."""

    source_id: str
    original_id: str
    harvest_date: _dt.date | None = None


@dataclass(frozen=True)
class Extra:
    """Unknown element kept across import/export, anchored at a field path."""

    path: str
    node: object  # RawNode; kept opaque here to avoid a layering cycle


@dataclass(frozen=True, kw_only=True)
class MetadataRecord:
    """The unit of storage, exchange and validation: envelope plus exactly
    one described entity."""

    record_id: Identifier | None = None
    creation_date: _dt.date
    last_updated: _dt.date
    curator: Ref
    creator: Ref | None = None
    complies_with: str = SCHEMA_NAME
    source: Provenance | None = None
    curation_status: str = "claimed"
    entity: object
    extras: tuple[Extra, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "extras", _tup(self.extras))

    def with_entity(self, entity) -> "MetadataRecord":
        return replace(self, entity=entity)


# ---------------------------------------------------------------------------
# Structural construction invariants


def _check_langtags(tags, where: str, out: list[str]):
    for tag in tags:
        if not is_well_formed(tag):
            out.append(f"{where}: language tag {tag!r} is not well-formed BCP-47")


def _check_sizes(sizes, where: str, out: list[str]):
    for i, size in enumerate(sizes):
        if size.amount < 0:
            out.append(f"{where}[{i}].amount: must be >= 0")


def _check_distributions(dists, where: str, out: list[str]):
    for i, dist in enumerate(dists):
        if not dist.licences:
            out.append(f"{where}[{i}].licences: at least one licence link required")


def structural_violations(entity) -> list[str]:
    """Every construction invariant the entity violates, by field path.

    Vocabulary resolution and the optionality matrix are the validation
    module's business; this is only what must hold for the value to make
    sense at all.
    """
    out: list[str] = []
    if isinstance(entity, LanguageResource):
        if not entity.names:
            out.append("resource_name: at least one required")
        if not entity.descriptions:
            out.append("description: at least one required")
        if not entity.additional_info:
            out.append("additional_info: at least one landing page or email required")
        for info in entity.additional_info:
            if info.kind not in ("landingPage", "email"):
                out.append(f"additional_info: unknown kind {info.kind!r}")

    if isinstance(entity, ToolService):
        if not entity.functions:
            out.append("functions: at least one required")
        for i, spec in enumerate(entity.input_specs):
            _check_langtags(spec.languages, f"input_specs[{i}].languages", out)
            if entity.language_dependent and not spec.languages:
                out.append(f"input_specs[{i}].languages: required for a language-dependent tool")
        for i, spec in enumerate(entity.output_specs):
            _check_langtags(spec.languages, f"output_specs[{i}].languages", out)
        if entity.is_functional_service:
            if not entity.docker_download_location:
                out.append("docker_download_location: required for a functional service")
            if not entity.execution_endpoint:
                out.append("execution_endpoint: required for a functional service")
        _check_distributions(entity.distributions, "distributions", out)
    elif isinstance(entity, Corpus):
        if entity.is_annotated and not entity.annotation_types:
            out.append("annotation_types: required for an annotated corpus")
        if entity.is_annotated and entity.raw_version is None:
            out.append("raw_version: required for an annotated corpus")
        for i, part in enumerate(entity.media_parts):
            if not part.languages:
                out.append(f"media_parts[{i}].languages: at least one required")
            _check_langtags(part.languages, f"media_parts[{i}].languages", out)
            if not part.sizes:
                out.append(f"media_parts[{i}].sizes: at least one required")
            _check_sizes(part.sizes, f"media_parts[{i}].sizes", out)
        _check_distributions(entity.distributions, "distributions", out)
    elif isinstance(entity, LexicalConceptualResource):
        if entity.lcr_subtype is None:
            out.append("lcr_subtype: required")
        if entity.basic_unit is None:
            out.append("basic_unit: required")
        _check_langtags(entity.meta_languages, "meta_languages", out)
        for i, part in enumerate(entity.media_parts):
            _check_langtags(part.languages, f"media_parts[{i}].languages", out)
            _check_sizes(part.sizes, f"media_parts[{i}].sizes", out)
        _check_distributions(entity.distributions, "distributions", out)
    elif isinstance(entity, LanguageDescription):
        if entity.ld_subtype is None:
            out.append("ld_subtype: required")
        if (entity.ld_subtype is not None
                and concept_local_name(entity.ld_subtype) == "model"
                and entity.model_details is None):
            out.append("model_details: required for a model")
        _check_langtags(entity.meta_languages, "meta_languages", out)
        _check_distributions(entity.distributions, "distributions", out)
    elif isinstance(entity, Organization):
        if not entity.names:
            out.append("organization_name: at least one required")
        if entity.kind not in ("organization", "group"):
            out.append(f"kind: unknown organization kind {entity.kind!r}")
    elif isinstance(entity, Person):
        if not entity.surnames:
            out.append("surname: required")
    elif isinstance(entity, Project):
        if not entity.titles:
            out.append("title: at least one required")
    elif isinstance(entity, Document):
        if not entity.titles:
            out.append("title: at least one required")
    elif isinstance(entity, LicenceTerms):
        if not entity.names:
            out.append("licence_terms_name: at least one required")
        if not entity.identifiers and not entity.access_url:
            out.append("identifiers/access_url: at least one of the two required")
    elif not isinstance(entity, LanguageResource):
        out.append(f"entity: not a described entity ({type(entity).__name__})")
    return out


# ---------------------------------------------------------------------------
# Identifier allocation and record construction


class IdentifierAllocator:
    """Mints ELG_<KIND>_<SRC>_<DDMMYY>_<serial> identifiers.

    Serials are strictly increasing per (kind, src, date). Thread-safe;
    the store keeps a persistent instance, this default one is process-local.
    """

    def __init__(self, src: str = "LOC"):
        if not re.fullmatch(r"[A-Z]{3}", src):
            raise ValueError(f"source code must be 3 uppercase letters, got {src!r}")
        self.src = src
        self._lock = threading.Lock()
        self._serials: dict[tuple[str, str, str], int] = {}

    def observe(self, value: str) -> None:
        """Register an existing identifier so future serials stay above it."""
        m = ID_PATTERN.match(value)
        if not m:
            return
        kind, src, datepart = value.split("_")[1:4]
        serial = int(value.rsplit("_", 1)[1])
        key = (kind, src, datepart)
        with self._lock:
            if serial > self._serials.get(key, 0):
                self._serials[key] = serial

    def next(self, kind: str, on: _dt.date) -> Identifier:
        if kind not in ("MDR", "ENT"):
            raise ValueError(f"identifier kind must be MDR or ENT, got {kind!r}")
        datepart = on.strftime("%d%m%y")
        key = (kind, self.src, datepart)
        with self._lock:
            serial = self._serials.get(key, 0) + 1
            self._serials[key] = serial
        return Identifier("elg", f"ELG_{kind}_{self.src}_{datepart}_{serial:08d}")


_default_allocator = IdentifierAllocator()


def new_record(entity, curator: Ref, now: _dt.date,
               allocator: IdentifierAllocator | None = None) -> MetadataRecord:
    """Wrap an entity in a fresh record envelope.

    Raises InvalidEntity listing every violated construction invariant.
    Language resources without an "elg" identifier get a fresh ENT one.
    """
    violations = structural_violations(entity)
    if violations:
        raise InvalidEntity(violations)
    alloc = allocator or _default_allocator
    if isinstance(entity, LanguageResource):
        if not any(i.scheme == "elg" for i in entity.lr_ids):
            ent_id = alloc.next("ENT", now)
            entity = replace(entity, lr_ids=entity.lr_ids + (ent_id,))
    return MetadataRecord(
        record_id=alloc.next("MDR", now),
        creation_date=now,
        last_updated=now,
        curator=curator,
        curation_status="claimed",
        entity=entity,
    )


# ---------------------------------------------------------------------------
# Relation resolution


def _relation_refs(entity) -> list[tuple[str, Ref]]:
    """Relation-shaped links carried by the entity, in declaration order.

    Descriptive actor fields (contacts, provider, curator) are not
    relations; the appendix-style tool record therefore yields [].
    """
    out: list[tuple[str, Ref]] = []
    if isinstance(entity, LanguageResource):
        out.extend(("hasRelatedDocument", r) for r in entity.related_docs)
        out.extend(("isFundedBy", r) for r in entity.funding_projects)
        out.extend((rel.type, rel.target) for rel in entity.relations)
    if isinstance(entity, Corpus) and entity.raw_version is not None:
        out.append(("hasRawVersion", entity.raw_version))
    if isinstance(entity, LanguageDescription) and entity.model_details is not None:
        if entity.model_details.training_corpus is not None:
            out.append(("trainedOn", entity.model_details.training_corpus))
    if isinstance(entity, ToolService):
        out.extend(("hasAncillaryResource", r) for r in entity.ancillary_resources)
    if isinstance(entity, Project):
        out.extend(("produced", r) for r in entity.related_lrs)
    return out


def resolve_relations(record: MetadataRecord, catalogue) -> list[tuple[str, object]]:
    """Resolve every relation ref against a catalogue lookup.

    ``catalogue`` is anything with ``__contains__`` over id strings (the
    store qualifies). Refs whose id is known resolve to the id; everything
    else passes through as the unresolved Ref.
    """
    out: list[tuple[str, object]] = []
    for rel_type, ref in _relation_refs(record.entity):
        if ref.record_id is not None and ref.record_id in catalogue:
            out.append((rel_type, ref.record_id))
        else:
            out.append((rel_type, ref))
    return out


def record_signature(record: MetadataRecord) -> MetadataRecord:
    """Record with store-assigned identifiers blanked, for content equality."""
    entity = record.entity
    if isinstance(entity, LanguageResource):
        entity = replace(entity, lr_ids=tuple(i for i in entity.lr_ids if i.scheme != "elg"))
    return replace(record, record_id=None, entity=entity)
