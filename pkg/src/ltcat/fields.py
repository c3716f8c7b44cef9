"""Machine-readable schema field table.

Single source of truth for: field optionality (the minimal-profile
matrix), XML element names and canonical order, canonical JSON keys,
vocabulary bindings, and the editor form model served over the API.
The validator, the serializers and ``field_registry`` all read it; the
matrix is configuration, not code, so revising a level touches one row.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import schema
from .exceptions import UnknownSubtype

MANDATORY = "mandatory"
MANDATORY_IF = "mandatory-if-applicable"
RECOMMENDED = "recommended"
OPTIONAL = "optional"

# Finding code for the functional-service pair, pinned apart from the
# generic missing-mandatory code.
FUNCTIONAL_PAIR = ("docker_download_location", "execution_endpoint")


@dataclass(frozen=True)
class FieldSpec:
    attr: str                 # dataclass attribute
    path: str                 # path segment in findings / registry
    xml: str                  # XML element local name
    kind: str
    level: str = OPTIONAL
    condition: str | None = None      # predicate token for mandatory-if-applicable
    vocabulary: str | None = None
    curie: bool = True                # concept tokens carry the ms: prefix in XML
    min_count: int = 0
    sub: tuple["FieldSpec", ...] = ()
    ref_kinds: tuple[str, ...] = ()   # entity subtypes a ref may inline
    inline_body: bool = False         # single-kind refs embed stub fields directly
    scheme_attr: str | None = None    # identifier scheme attribute name
    fixed_value: str | None = None
    default: object = None
    either_with: str | None = None    # sibling path that can satisfy this mandate
    json_key: str | None = None

    @property
    def json(self) -> str:
        return self.json_key or self.xml


def F(attr, path, xml, kind, level=OPTIONAL, **kw) -> FieldSpec:
    return FieldSpec(attr=attr, path=path, xml=xml, kind=kind, level=level, **kw)


# --- nested object tables ---------------------------------------------------

SIZE_FIELDS = (
    F("amount", "amount", "amount", "number", MANDATORY),
    F("unit", "unit", "sizeUnit", "concept", MANDATORY, vocabulary="size-unit"),
)

IOSPEC_INPUT_FIELDS = (
    F("processing_resource_type", "processing_resource_type", "processingResourceType",
      "concept", RECOMMENDED, vocabulary="processing-resource-type"),
    F("languages", "languages", "languageTag", "langtags", MANDATORY_IF,
      condition="language_dependent"),
    F("media_type", "media_type", "mediaType", "concept", MANDATORY,
      vocabulary="media-type", curie=False),
    F("data_formats", "data_formats", "dataFormat", "concepts", MANDATORY,
      vocabulary="data-format", min_count=1),
    F("annotation_types", "annotation_types", "annotationType", "concepts", OPTIONAL,
      vocabulary="annotation-type"),
    F("character_encodings", "character_encodings", "characterEncoding", "textlist", OPTIONAL),
)

IOSPEC_OUTPUT_FIELDS = (
    F("processing_resource_type", "processing_resource_type", "processingResourceType",
      "concept", RECOMMENDED, vocabulary="processing-resource-type"),
    F("languages", "languages", "languageTag", "langtags", OPTIONAL),
    F("media_type", "media_type", "mediaType", "concept", MANDATORY,
      vocabulary="media-type", curie=False),
    F("data_formats", "data_formats", "dataFormat", "concepts", RECOMMENDED,
      vocabulary="data-format"),
    F("annotation_types", "annotation_types", "annotationType", "concepts", RECOMMENDED,
      vocabulary="annotation-type"),
    F("character_encodings", "character_encodings", "characterEncoding", "textlist", OPTIONAL),
)

MEDIA_PART_FIELDS = (
    F("media_type", "media_type", "mediaType", "concept", MANDATORY,
      vocabulary="media-type", curie=False),
    F("languages", "languages", "languageTag", "langtags", MANDATORY, min_count=1),
    F("sizes", "sizes", "size", "sizes", MANDATORY, min_count=1),
)

SOFTWARE_DIST_FIELDS = (
    F("form", "form", "SoftwareDistributionForm", "concept", MANDATORY,
      vocabulary="distribution-form"),
    F("download_location", "download_location", "downloadLocation", "text", MANDATORY,
      either_with="access_location"),
    F("access_location", "access_location", "accessLocation", "text", OPTIONAL),
    F("digest", "digest", "digest", "text", OPTIONAL),
    F("licences", "licences", "LicenceTerms", "reflist", MANDATORY, min_count=1,
      ref_kinds=("LicenceTerms",), inline_body=True),
)

DATA_DIST_FIELDS = (
    F("form", "form", "DataDistributionForm", "concept", MANDATORY,
      vocabulary="distribution-form"),
    F("access_location", "access_location", "accessLocation", "text", MANDATORY),
    F("data_formats", "data_formats", "dataFormat", "concepts", MANDATORY,
      vocabulary="data-format", min_count=1),
    F("sizes", "sizes", "size", "sizes", RECOMMENDED),
    F("licences", "licences", "LicenceTerms", "reflist", MANDATORY, min_count=1,
      ref_kinds=("LicenceTerms",), inline_body=True),
)

MODEL_DETAILS_FIELDS = (
    F("training_corpus", "training_corpus", "trainingCorpus", "ref", MANDATORY,
      ref_kinds=("LR",)),
    F("framework", "framework", "framework", "text", MANDATORY),
)

# --- envelope ----------------------------------------------------------------

ENVELOPE_FIELDS = (
    F("record_id", "record_id", "MetadataRecordIdentifier", "identifier", OPTIONAL,
      scheme_attr="MetadataRecordIdentifierScheme"),
    F("creation_date", "creation_date", "metadataCreationDate", "date", MANDATORY),
    F("last_updated", "last_updated", "metadataLastDateUpdated", "date", MANDATORY),
    F("curator", "curator", "metadataCurator", "ref", MANDATORY,
      ref_kinds=("Person",), inline_body=True),
    F("complies_with", "complies_with", "compliesWith", "fixed", MANDATORY,
      fixed_value=schema.SCHEMA_NAME),
    F("creator", "creator", "metadataCreator", "ref", OPTIONAL,
      ref_kinds=("Person",), inline_body=True),
    F("curation_status", "curation_status", "curationStatus", "status", OPTIONAL,
      default="claimed"),
    F("source", "source", "source", "provenance", MANDATORY_IF,
      condition="status_ingested"),
)

# --- language resource common -------------------------------------------------

LR_COMMON_FIELDS = (
    F("names", "resource_name", "resourceName", "langmap", MANDATORY),
    F("short_names", "resource_short_name", "resourceShortName", "langmap", OPTIONAL),
    F("descriptions", "description", "description", "langmap", MANDATORY),
    F("lr_ids", "lr_identifier", "LRIdentifier", "identifiers", OPTIONAL,
      scheme_attr="LRIdentifierScheme"),
    F("version", "version", "version", "text", RECOMMENDED, default="1.0.0"),
    F("additional_info", "additional_info", "additionalInfo", "contactpoints",
      MANDATORY, min_count=1),
    F("contacts", "contact", "contact", "reflist", RECOMMENDED,
      ref_kinds=("Person", "Organization")),
    F("keywords", "keyword", "keyword", "langlist", RECOMMENDED),
    F("domains", "domain", "domain", "concepts", RECOMMENDED, vocabulary="domain"),
    F("resource_provider", "resource_provider", "resourceProvider", "ref", MANDATORY,
      ref_kinds=("Organization", "Person")),
    F("validated", "validated", "validated", "bool", OPTIONAL, default=False),
    F("related_docs", "related_document", "relatedDocument", "reflist", RECOMMENDED,
      ref_kinds=("Document",)),
    F("funding_projects", "funding_project", "fundingProject", "reflist", OPTIONAL,
      ref_kinds=("Project",)),
    F("relations", "relations", "relation", "relations", OPTIONAL),
)

# --- LR subtypes -------------------------------------------------------------

TOOL_FIELDS = (
    F("functions", "functions", "function", "concepts", MANDATORY,
      vocabulary="lt-taxonomy", min_count=1),
    F("language_dependent", "language_dependent", "languageDependent", "bool", MANDATORY),
    F("hw_sw_requirements", "hw_sw_requirements", "additionalHwRequirements", "text", OPTIONAL),
    F("input_specs", "input_specs", "inputContentResource", "objects", MANDATORY,
      min_count=1, sub=IOSPEC_INPUT_FIELDS),
    F("output_specs", "output_specs", "outputResource", "objects", RECOMMENDED,
      sub=IOSPEC_OUTPUT_FIELDS),
    F("ancillary_resources", "ancillary_resources", "ancillaryResource", "reflist",
      OPTIONAL, ref_kinds=("LR",)),
    F("is_functional_service", "is_functional_service", "isFunctionalService", "bool",
      OPTIONAL, default=False),
    F("docker_download_location", "docker_download_location", "dockerDownloadLocation",
      "text", MANDATORY_IF, condition="is_functional_service"),
    F("execution_endpoint", "execution_endpoint", "executionEndpoint", "text",
      MANDATORY_IF, condition="is_functional_service"),
    F("image_digest", "image_digest", "imageDigest", "text", OPTIONAL),
    F("distributions", "distributions", "SoftwareDistribution", "objects", MANDATORY,
      min_count=1, sub=SOFTWARE_DIST_FIELDS),
)

CORPUS_FIELDS = (
    F("is_annotated", "is_annotated", "isAnnotated", "bool", MANDATORY),
    F("annotation_types", "annotation_types", "annotationType", "concepts", MANDATORY_IF,
      condition="is_annotated", vocabulary="annotation-type", min_count=1),
    F("raw_version", "raw_version", "rawVersion", "ref", MANDATORY_IF,
      condition="is_annotated", ref_kinds=("LR",)),
    F("text_genres", "text_genres", "textGenre", "concepts", RECOMMENDED,
      vocabulary="text-genre"),
    F("audio_genres", "audio_genres", "audioGenre", "concepts", OPTIONAL,
      vocabulary="audio-genre"),
    F("text_types", "text_types", "textType", "concepts", OPTIONAL,
      vocabulary="text-type"),
    F("media_parts", "media_parts", "MediaPart", "objects", MANDATORY, min_count=1,
      sub=MEDIA_PART_FIELDS),
    F("distributions", "distributions", "DataDistribution", "objects", MANDATORY,
      min_count=1, sub=DATA_DIST_FIELDS),
)

LCR_FIELDS = (
    F("lcr_subtype", "lcr_subtype", "lcrSubtype", "concept", MANDATORY,
      vocabulary="lcr-subtype"),
    F("meta_languages", "meta_language", "metaLanguage", "langtags", MANDATORY,
      min_count=1),
    F("basic_unit", "basic_unit", "basicUnit", "concept", MANDATORY,
      vocabulary="basic-unit"),
    F("encoding_info", "encoding_info", "encodingInfo", "concepts", RECOMMENDED,
      vocabulary="encoding-info"),
    F("media_parts", "media_parts", "MediaPart", "objects", RECOMMENDED,
      sub=MEDIA_PART_FIELDS),
    F("distributions", "distributions", "DataDistribution", "objects", MANDATORY,
      min_count=1, sub=DATA_DIST_FIELDS),
)

LD_FIELDS = (
    F("ld_subtype", "ld_subtype", "ldSubtype", "concept", MANDATORY,
      vocabulary="ld-subtype"),
    F("meta_languages", "meta_language", "metaLanguage", "langtags", MANDATORY,
      min_count=1),
    F("encoding_info", "encoding_info", "encodingInfo", "concepts", RECOMMENDED,
      vocabulary="encoding-info"),
    F("model_details", "model_details", "modelDetails", "object", MANDATORY_IF,
      condition="ld_subtype_is_model", sub=MODEL_DETAILS_FIELDS),
    F("media_parts", "media_parts", "MediaPart", "objects", RECOMMENDED,
      sub=MEDIA_PART_FIELDS),
    F("distributions", "distributions", "DataDistribution", "objects", MANDATORY,
      min_count=1, sub=DATA_DIST_FIELDS),
)

# --- satellite entities --------------------------------------------------------

ORGANIZATION_FIELDS = (
    F("names", "organization_name", "organizationName", "langmap", MANDATORY),
    F("identifiers", "identifiers", "OrganizationIdentifier", "identifiers", OPTIONAL,
      scheme_attr="OrganizationIdentifierScheme"),
    F("email", "email", "email", "text", OPTIONAL),
    F("website", "website", "website", "text", RECOMMENDED),
    F("logo", "logo", "logo", "text", OPTIONAL),
    F("lt_areas", "lt_areas", "ltArea", "concepts", RECOMMENDED,
      vocabulary="lt-taxonomy"),
    F("promotional_urls", "promotional_urls", "promotionalUrl", "textlist", OPTIONAL),
    F("members", "members", "member", "reflist", OPTIONAL, ref_kinds=("Person",)),
    F("kind", "organization_kind", "organizationKind", "text", OPTIONAL,
      default="organization"),
)

PERSON_FIELDS = (
    F("surnames", "surname", "surname", "langmap", MANDATORY),
    F("given_names", "given_name", "givenName", "langmap", RECOMMENDED),
    F("identifiers", "identifiers", "PersonIdentifier", "identifiers", OPTIONAL,
      scheme_attr="PersonIdentifierScheme"),
    F("email", "email", "email", "text", RECOMMENDED),
    F("affiliation", "affiliation", "affiliation", "ref", OPTIONAL,
      ref_kinds=("Organization",)),
)

PROJECT_FIELDS = (
    F("titles", "project_name", "projectName", "langmap", MANDATORY),
    F("identifiers", "identifiers", "ProjectIdentifier", "identifiers", OPTIONAL,
      scheme_attr="ProjectIdentifierScheme"),
    F("grant_id", "grant_id", "grantId", "text", RECOMMENDED),
    F("funder", "funder", "funder", "ref", RECOMMENDED, ref_kinds=("Organization",)),
    F("website", "website", "website", "text", RECOMMENDED),
    F("lt_areas", "lt_areas", "ltArea", "concepts", RECOMMENDED,
      vocabulary="lt-taxonomy"),
    F("related_lrs", "related_lrs", "relatedLR", "reflist", OPTIONAL, ref_kinds=("LR",)),
)

DOCUMENT_FIELDS = (
    F("titles", "title", "title", "langmap", MANDATORY),
    F("authors", "authors", "author", "textlist", RECOMMENDED),
    F("identifiers", "identifiers", "DocumentIdentifier", "identifiers", RECOMMENDED,
      scheme_attr="DocumentIdentifierScheme"),
    F("year", "publication_year", "publicationYear", "int", RECOMMENDED),
    F("venue", "venue", "venue", "text", OPTIONAL),
    F("lt_area", "lt_area", "ltArea", "concept", OPTIONAL, vocabulary="lt-taxonomy"),
)

LICENCE_FIELDS = (
    F("names", "licence_terms_name", "licenceTermsName", "langmap", MANDATORY),
    F("identifiers", "identifiers", "LicenceIdentifier", "identifiers", MANDATORY,
      scheme_attr="LicenceIdentifierScheme", either_with="access_url"),
    F("access_url", "access_url", "accessUrl", "text", OPTIONAL),
    F("conditions_of_use", "conditions_of_use", "conditionOfUse", "concepts",
      RECOMMENDED, vocabulary="condition-of-use"),
)

# Constructors for nested object tables (keyed by table identity).
OBJECT_CTORS = {
    IOSPEC_INPUT_FIELDS: schema.IOSpec,
    IOSPEC_OUTPUT_FIELDS: schema.IOSpec,
    MEDIA_PART_FIELDS: schema.MediaPart,
    SOFTWARE_DIST_FIELDS: schema.SoftwareDistribution,
    DATA_DIST_FIELDS: schema.DataDistribution,
    MODEL_DETAILS_FIELDS: schema.ModelDetails,
}

# --- per-subtype wiring ---------------------------------------------------------

LR_SUBTYPE_TABLES = {
    "ToolService": ("toolService", TOOL_FIELDS, schema.ToolService),
    "Corpus": ("corpus", CORPUS_FIELDS, schema.Corpus),
    "LexicalConceptualResource": ("lexicalConceptualResource", LCR_FIELDS,
                                  schema.LexicalConceptualResource),
    "LanguageDescription": ("languageDescription", LD_FIELDS, schema.LanguageDescription),
}

SATELLITE_TABLES = {
    "Organization": (ORGANIZATION_FIELDS, schema.Organization),
    "Person": (PERSON_FIELDS, schema.Person),
    "Project": (PROJECT_FIELDS, schema.Project),
    "Document": (DOCUMENT_FIELDS, schema.Document),
    "LicenceTerms": (LICENCE_FIELDS, schema.LicenceTerms),
}

LR_SUBTYPES = tuple(LR_SUBTYPE_TABLES)
ALL_SUBTYPES = LR_SUBTYPES + tuple(SATELLITE_TABLES)


def entity_fields(subtype: str) -> tuple[FieldSpec, ...]:
    """Entity-level field table (common + subtype fields for LRs)."""
    if subtype in LR_SUBTYPE_TABLES:
        return LR_COMMON_FIELDS + LR_SUBTYPE_TABLES[subtype][1]
    if subtype in SATELLITE_TABLES:
        return SATELLITE_TABLES[subtype][0]
    raise UnknownSubtype(subtype)


def entity_class(subtype: str):
    if subtype in LR_SUBTYPE_TABLES:
        return LR_SUBTYPE_TABLES[subtype][2]
    if subtype in SATELLITE_TABLES:
        return SATELLITE_TABLES[subtype][1]
    raise UnknownSubtype(subtype)


def subtype_for_class(cls) -> str:
    return cls.__name__


CONDITION_TOKENS = ("is_annotated", "is_functional_service", "language_dependent",
                    "ld_subtype_is_model", "status_ingested")


def _flatten(specs: tuple[FieldSpec, ...], prefix: str,
             out: list[tuple[str, FieldSpec]]) -> None:
    for spec in specs:
        path = f"{prefix}{spec.path}"
        out.append((path, spec))
        if spec.sub:
            sub_prefix = f"{path}[]." if spec.kind == "objects" else f"{path}."
            _flatten(spec.sub, sub_prefix, out)


ENVELOPE_PATHS = frozenset(s.path for s in ENVELOPE_FIELDS) | {"entity"}


def registry_specs(subtype: str) -> list[tuple[str, FieldSpec]]:
    """Ordered (path, spec) rows: envelope first, then entity fields.

    Paths are entity-relative ("functions", "input_specs[].media_type");
    finding paths prepend "entity." to non-envelope rows.
    """
    rows: list[tuple[str, FieldSpec]] = []
    _flatten(ENVELOPE_FIELDS, "", rows)
    rows.append(("entity", FieldSpec(attr="entity", path="entity", xml="DescribedEntity",
                                     kind="entity", level=MANDATORY)))
    _flatten(entity_fields(subtype), "", rows)
    return rows


def field_registry(subtype: str) -> list[tuple[str, str]]:
    """Deterministic, total (field-path, optionality-level) listing."""
    seen: set[str] = set()
    registry: list[tuple[str, str]] = []
    for path, spec in registry_specs(subtype):
        if path in seen:
            raise AssertionError(f"duplicate registry path {path}")
        seen.add(path)
        registry.append((path, spec.level))
    return registry


def finding_path(registry_path: str) -> str:
    """Registry path -> path used in findings (entity fields get a prefix)."""
    if registry_path in ENVELOPE_PATHS or registry_path == "entity":
        return registry_path
    return f"entity.{registry_path}"


def _populated(value) -> bool:
    if value is None:
        return False
    if isinstance(value, (tuple, list, dict, str)):
        return len(value) > 0
    return True


def _collect_populated(obj, specs: tuple[FieldSpec, ...], prefix: str,
                       out: set[str]) -> None:
    for spec in specs:
        value = getattr(obj, spec.attr, None)
        path = f"{prefix}{spec.path}"
        if not _populated(value):
            continue
        out.add(path)
        if spec.kind == "object" and spec.sub:
            _collect_populated(value, spec.sub, f"{path}.", out)
        elif spec.kind == "objects" and spec.sub:
            for item in value:
                _collect_populated(item, spec.sub, f"{path}[].", out)


def populated_paths(record) -> set[str]:
    """Registry paths carrying a value in this record (metadata-usage stats)."""
    out: set[str] = set()
    _collect_populated(record, ENVELOPE_FIELDS, "", out)
    out.add("entity")
    subtype = type(record.entity).__name__
    _collect_populated(record.entity, entity_fields(subtype), "", out)
    return out
