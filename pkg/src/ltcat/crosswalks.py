"""Metadata crosswalks: DCAT and schema.org Dataset exports, and import of
the legacy profile dialect.

Mapping tables ship as versioned data files (data/mappings/*.json); each
row names a source field, its target term, the transform applied and a
lossiness flag. Tools/services have no faithful Dataset class and are not
exported here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .exceptions import NotADataResource, NotCompliant
from .schema import MetadataRecord, concept_local_name
from .serialization import record_subject_iri
from .tree import RawNode
from .validation import (
    Finding, ValidationReport, validate_minimal, validate_tree,
)
from .vocab import METASHARE_NS, VocabularySet

DCAT_NS = "http://www.w3.org/ns/dcat#"
DCT_NS = "http://purl.org/dc/terms/"

DATA_SUBTYPES = ("Corpus", "LexicalConceptualResource", "LanguageDescription")

_BYTES_IRI = METASHARE_NS + "bytes"


@dataclass(frozen=True)
class MappingRow:
    source: str
    target: str | None
    transform: str
    lossiness: str  # "faithful" | "lossy" | "dropped"


@dataclass(frozen=True)
class MappingTable:
    id: str
    version: int
    rows: tuple[MappingRow, ...]


def load_mapping(table_id: str) -> MappingTable:
    path = resources.files("ltcat").joinpath(f"data/mappings/{table_id}.json")
    obj = json.loads(path.read_text(encoding="utf-8"))
    return MappingTable(id=obj["id"], version=obj["version"],
                        rows=tuple(MappingRow(**row) for row in obj["rows"]))


def _require_data_lr(record: MetadataRecord, vocabularies: VocabularySet) -> None:
    if type(record.entity).__name__ not in DATA_SUBTYPES:
        raise NotADataResource(
            f"{type(record.entity).__name__} has no Dataset mapping; "
            "tools are exported in native formats only")
    report = validate_minimal(record, vocabularies)
    if not report.is_minimal_compliant:
        raise NotCompliant(report)


def _langmap_values(items) -> list[dict]:
    return [{"@language": lt.lang, "@value": lt.text} for lt in items]


def _languages(entity) -> list[str]:
    langs: list[str] = []
    for part in getattr(entity, "media_parts", ()) or ():
        langs.extend(part.languages)
    langs.extend(getattr(entity, "meta_languages", ()) or ())
    seen = []
    for tag in langs:
        if tag not in seen:
            seen.append(tag)
    return seen


def _licence_node(ref) -> object:
    stub = ref.stub
    url = getattr(stub, "access_url", None) if stub is not None else None
    if url:
        return {"@id": url}
    name = ref.display_name()
    if name:
        return name
    return {"@id": f"{METASHARE_NS}record/{ref.record_id}"}


def to_dcat(record: MetadataRecord, vocabularies: VocabularySet) -> str:
    """DCAT Dataset JSON-LD for a compliant data language resource."""
    _require_data_lr(record, vocabularies)
    entity = record.entity
    dataset: dict = {
        "@context": {"dcat": DCAT_NS, "dct": DCT_NS},
        "@id": record_subject_iri(record),
        "@type": "dcat:Dataset",
        "dct:title": _langmap_values(entity.names),
        "dct:description": _langmap_values(entity.descriptions),
    }
    if record.record_id is not None:
        dataset["dct:identifier"] = record.record_id.value
    keywords = [lt.text for lt in entity.keywords]
    if keywords:
        dataset["dcat:keyword"] = keywords
    languages = _languages(entity)
    if languages:
        dataset["dct:language"] = languages
    if entity.domains:
        dataset["dcat:theme"] = [{"@id": iri} for iri in entity.domains]
    landing = [cp.value for cp in entity.additional_info if cp.kind == "landingPage"]
    if landing:
        dataset["dcat:landingPage"] = [{"@id": url} for url in landing]

    distributions = []
    for dist in entity.distributions:
        node: dict = {"@type": "dcat:Distribution"}
        if dist.access_location:
            node["dcat:accessURL"] = {"@id": dist.access_location}
        if dist.data_formats:
            node["dct:format"] = [concept_local_name(f) for f in dist.data_formats]
        byte_sizes = [s.amount for s in dist.sizes if s.unit == _BYTES_IRI]
        if byte_sizes:
            node["dcat:byteSize"] = int(byte_sizes[0])
        other_sizes = [s for s in dist.sizes if s.unit != _BYTES_IRI]
        if other_sizes:
            # DCAT has no unit-typed size; carried as a note
            node["dct:description"] = "; ".join(
                f"{int(s.amount) if float(s.amount).is_integer() else s.amount} "
                f"{concept_local_name(s.unit)}" for s in other_sizes)
        if dist.licences:
            node["dct:license"] = _licence_node(dist.licences[0])
        distributions.append(node)
    dataset["dcat:distribution"] = distributions
    return json.dumps(dataset, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_schema_org(record: MetadataRecord, vocabularies: VocabularySet) -> str:
    """schema.org Dataset JSON-LD for a compliant data language resource."""
    _require_data_lr(record, vocabularies)
    entity = record.entity
    name = entity.names[0].text
    for lt in entity.names:
        if lt.lang == "en":
            name = lt.text
    doc: dict = {
        "@context": "https://schema.org/",
        "@type": "Dataset",
        "@id": record_subject_iri(record),
        "name": name,
        "description": " ".join(lt.text for lt in entity.descriptions),
    }
    if record.record_id is not None:
        doc["identifier"] = record.record_id.value
    if entity.short_names:
        doc["alternateName"] = entity.short_names[0].text
    keywords = [lt.text for lt in entity.keywords]
    if keywords:
        doc["keywords"] = ", ".join(keywords)
    languages = _languages(entity)
    if languages:
        doc["inLanguage"] = languages
    landing = [cp.value for cp in entity.additional_info if cp.kind == "landingPage"]
    if landing:
        doc["url"] = landing[0]
    licences = []
    distributions = []
    for dist in entity.distributions:
        node: dict = {"@type": "DataDownload"}
        if dist.access_location:
            node["contentUrl"] = dist.access_location
        if dist.data_formats:
            node["encodingFormat"] = [concept_local_name(f) for f in dist.data_formats]
        distributions.append(node)
        for ref in dist.licences:
            stub = ref.stub
            url = getattr(stub, "access_url", None) if stub is not None else None
            licences.append(url or ref.display_name() or ref.record_id)
    doc["distribution"] = distributions
    if licences:
        doc["license"] = licences[0] if len(licences) == 1 else licences
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Legacy profile import


_LEGACY_SUBTYPE = {
    "corpusInfo": "Corpus",
    "lexicalConceptualResourceInfo": "LexicalConceptualResource",
    "languageDescriptionInfo": "LanguageDescription",
}

_LEGACY_SIZE_UNITS = {
    "sentences": "sentences", "words": "words", "tokens": "tokens",
    "entries": "entries", "documents": "documents", "hours": "hours",
    "bytes": "bytes", "concepts": "concepts",
}

_LEGACY_LCR_TYPES = {
    "ontology": "ontology", "lexicon": "lexicon", "wordList": "wordList",
    "terminologicalResource": "termGlossary", "thesaurus": "thesaurus",
    "computationalLexicon": "lexicon",
}


class _LegacyConverter:
    """One legacy-record conversion; tracks which mapping rows fired."""

    def __init__(self):
        self.findings: list[Finding] = []
        self.used_rows: set[str] = set()

    def note(self, severity: str, path: str, code: str, message: str):
        self.findings.append(Finding(path=path, severity=severity, code=code,
                                     message=message))

    def use(self, source_path: str):
        self.used_rows.add(source_path)

    def drop(self, path: str):
        self.note("info", path, "DROPPED_FIELD",
                  "legacy field has no target; dropped")

    def convert(self, tree: RawNode) -> RawNode | None:
        if tree.name != "resourceInfo":
            self.note("error", "", "WRONG_ROOT",
                      f"legacy root is {tree.name!r}, expected resourceInfo")
            return None
        root = RawNode(name="MetadataRecord")
        ident = tree.child("identificationInfo")
        meta = tree.child("metadataInfo")

        creation = "1970-01-01"
        if meta is not None:
            date_node = meta.child("metadataCreationDate")
            if date_node is not None:
                creation = date_node.scalar()
                self.use("metadataInfo/metadataCreationDate")
            curator = meta.child("metadataCreator")
        else:
            curator = None
        root.children.append(RawNode(name="metadataCreationDate", text=creation))
        root.children.append(RawNode(name="metadataLastDateUpdated", text=creation))

        curator_node = RawNode(name="metadataCurator")
        if curator is not None and curator.child("surname") is not None:
            self.use("metadataInfo/metadataCreator/surname")
            curator_node.children.append(RawNode(
                name="surname", attrs={"lang": "en"},
                text=curator.child("surname").scalar()))
            given = curator.child("givenName")
            if given is not None:
                curator_node.children.append(RawNode(
                    name="givenName", attrs={"lang": "en"}, text=given.scalar()))
        else:
            curator_node.children.append(RawNode(name="surname",
                                                 attrs={"lang": "en"},
                                                 text="Unknown"))
            self.note("info", "curator", "DEFAULT_APPLIED",
                      "legacy record names no metadata creator")
        root.children.append(curator_node)
        root.children.append(RawNode(name="compliesWith", text="ms:ELG-SHARE"))

        lr = RawNode(name="LanguageResource")
        lr.children.append(RawNode(name="entityType", text="languageResource"))
        component = tree.child("resourceComponentType")
        sub_node = None
        subtype = None
        if component is not None:
            for child in component.children:
                subtype = _LEGACY_SUBTYPE.get(child.name)
                if subtype is not None:
                    sub_node = child
                    self.use(f"resourceComponentType/{child.name}")
                    break
                self.drop(f"resourceComponentType/{child.name}")
        if subtype is None:
            self.note("error", "entity", "INVALID_VALUE",
                      "legacy record has no data-resource component "
                      "(tools are out of the legacy profile)")
            return None

        if ident is not None:
            for name_node in ident.all("resourceName"):
                self.use("identificationInfo/resourceName")
                lr.children.append(RawNode(
                    name="resourceName",
                    attrs={"lang": name_node.attrs.get("lang", "en")},
                    text=name_node.scalar()))
            short = ident.child("resourceShortName")
            if short is not None:
                self.use("identificationInfo/resourceShortName")
                lr.children.append(RawNode(
                    name="resourceShortName",
                    attrs={"lang": short.attrs.get("lang", "en")},
                    text=short.scalar()))
            for desc in ident.all("description"):
                self.use("identificationInfo/description")
                lr.children.append(RawNode(
                    name="description",
                    attrs={"lang": desc.attrs.get("lang", "en")},
                    text=desc.scalar()))
            for id_node in ident.all("identifier"):
                self.use("identificationInfo/identifier")
                lr.children.append(RawNode(name="LRIdentifier",
                                           attrs={"LRIdentifierScheme": "ms:other"},
                                           text=id_node.scalar()))
            url = ident.child("url")
            if url is not None:
                self.use("identificationInfo/url")
                info = RawNode(name="additionalInfo")
                info.children.append(RawNode(name="landingPage", text=url.scalar()))
                lr.children.append(info)

        version = tree.child("versionInfo")
        if version is not None and version.child("version") is not None:
            self.use("versionInfo/version")
            lr.children.append(RawNode(name="version",
                                       text=version.child("version").scalar()))

        contact = tree.child("contactPerson")
        if contact is not None and contact.child("surname") is not None:
            self.use("contactPerson/surname")
            person = RawNode(name="Person")
            person.children.append(RawNode(name="surname", attrs={"lang": "en"},
                                           text=contact.child("surname").scalar()))
            given = contact.child("givenName")
            if given is not None:
                person.children.append(RawNode(name="givenName", attrs={"lang": "en"},
                                               text=given.scalar()))
            comm = contact.child("communicationInfo")
            if comm is not None and comm.child("email") is not None:
                self.use("contactPerson/communicationInfo/email")
                person.children.append(RawNode(name="email",
                                               text=comm.child("email").scalar()))
            lr.children.append(RawNode(name="contact", children=[person]))

        provider = tree.child("resourceCreationInfo")
        provider_name = None
        if provider is not None:
            org = provider.child("resourceCreator")
            if org is not None and org.child("organizationName") is not None:
                provider_name = org.child("organizationName").scalar()
                self.use("resourceCreationInfo/resourceCreator/organizationName")
        wrapper = RawNode(name="resourceProvider")
        org_node = RawNode(name="Organization")
        org_node.children.append(RawNode(
            name="organizationName", attrs={"lang": "en"},
            text=provider_name or "Unknown provider"))
        wrapper.children.append(org_node)
        lr.children.append(wrapper)
        if provider_name is None:
            self.note("info", "entity.resource_provider", "DEFAULT_APPLIED",
                      "legacy record names no resource creator")

        media_parts, text_genres = self._legacy_media(sub_node, subtype)
        distributions = self._legacy_distributions(tree)

        sub = RawNode(name=subtype)
        if subtype == "Corpus":
            sub.children.append(RawNode(name="lrType", text="corpus"))
            sub.children.append(RawNode(name="isAnnotated", text="false"))
            sub.children.extend(text_genres)
            sub.children.extend(media_parts)
            sub.children.extend(distributions)
        elif subtype == "LexicalConceptualResource":
            sub.children.append(RawNode(name="lrType",
                                        text="lexicalConceptualResource"))
            lcr_type = sub_node.child("lexicalConceptualResourceType")
            token = _LEGACY_LCR_TYPES.get(lcr_type.scalar() if lcr_type else "",
                                          "lexicon")
            if lcr_type is not None:
                self.use("lexicalConceptualResourceInfo/lexicalConceptualResourceType")
            sub.children.append(RawNode(name="lcrSubtype", text=f"ms:{token}"))
            sub.children.append(RawNode(name="basicUnit", text="ms:lemma"))
            self.note("info", "entity.basic_unit", "DEFAULT_APPLIED",
                      "legacy profile carries no basic unit; defaulted to lemma")
            for part in media_parts:
                for tag in part.all("languageTag"):
                    sub.children.append(RawNode(name="metaLanguage", text=tag.scalar()))
                break
            if not media_parts:
                sub.children.append(RawNode(name="metaLanguage", text="en"))
            sub.children.extend(media_parts)
            sub.children.extend(distributions)
        else:
            sub.children.append(RawNode(name="lrType", text="languageDescription"))
            sub.children.append(RawNode(name="ldSubtype", text="ms:grammar"))
            for part in media_parts:
                for tag in part.all("languageTag"):
                    sub.children.append(RawNode(name="metaLanguage", text=tag.scalar()))
                break
            sub.children.extend(media_parts)
            sub.children.extend(distributions)
        lr.children.append(RawNode(name="LRSubclass", children=[sub]))

        for child in tree.children:
            if child.name not in ("identificationInfo", "metadataInfo", "versionInfo",
                                  "contactPerson", "distributionInfo",
                                  "resourceComponentType", "resourceCreationInfo"):
                self.drop(child.name)

        root.children.append(RawNode(name="DescribedEntity", children=[lr]))
        return root

    def _legacy_media(self, sub_node: RawNode, subtype: str):
        parts: list[RawNode] = []
        genres: list[RawNode] = []
        media_wrappers = []
        for name in ("corpusMediaType", "lexicalConceptualResourceMediaType",
                     "languageDescriptionMediaType"):
            wrapper = sub_node.child(name)
            if wrapper is not None:
                media_wrappers.append(wrapper)
        for wrapper in media_wrappers:
            for info_name, media in (("corpusTextInfo", "text"),
                                     ("corpusAudioInfo", "audio"),
                                     ("lexicalConceptualResourceTextInfo", "text"),
                                     ("languageDescriptionTextInfo", "text")):
                for info in wrapper.all(info_name):
                    part = RawNode(name="MediaPart")
                    part.children.append(RawNode(name="mediaType", text=media))
                    for lang_info in info.all("languageInfo"):
                        lang_id = lang_info.child("languageId")
                        if lang_id is not None:
                            self.use("languageInfo/languageId")
                            part.children.append(RawNode(name="languageTag",
                                                         text=lang_id.scalar()))
                        if lang_info.child("languageName") is not None:
                            self.drop("languageInfo/languageName")
                    for size_info in info.all("sizeInfo"):
                        size = size_info.child("size")
                        unit = size_info.child("sizeUnit")
                        if size is None or unit is None:
                            continue
                        self.use("sizeInfo/size")
                        unit_token = _LEGACY_SIZE_UNITS.get(unit.scalar(), "entries")
                        size_node = RawNode(name="size")
                        size_node.children.append(RawNode(name="amount",
                                                          text=size.scalar()))
                        size_node.children.append(RawNode(name="sizeUnit",
                                                          text=f"ms:{unit_token}"))
                        part.children.append(size_node)
                    genre = info.child("textGenre")
                    if genre is not None and subtype == "Corpus":
                        self.use("corpusTextInfo/textGenre")
                        token = genre.scalar()
                        genres.append(RawNode(name="textGenre", text=f"ms:{token}"))
                    parts.append(part)
        return parts, genres

    def _legacy_distributions(self, tree: RawNode) -> list[RawNode]:
        out: list[RawNode] = []
        for dist_info in tree.all("distributionInfo"):
            dist = RawNode(name="DataDistribution")
            dist.children.append(RawNode(name="DataDistributionForm",
                                         text="ms:downloadableFile"))
            loc = dist_info.child("downloadLocation")
            if loc is not None:
                self.use("distributionInfo/downloadLocation")
                dist.children.append(RawNode(name="accessLocation", text=loc.scalar()))
            fmt = dist_info.child("distributionFormat")
            if fmt is not None:
                self.use("distributionInfo/distributionFormat")
                dist.children.append(RawNode(name="dataFormat",
                                             text=f"ms:{fmt.scalar()}"))
            else:
                dist.children.append(RawNode(name="dataFormat", text="ms:Text"))
            for lic_infos in dist_info.all("licenceInfos"):
                for lic_info in lic_infos.all("licenceInfo"):
                    lic = lic_info.child("licence")
                    if lic is None:
                        continue
                    self.use("distributionInfo/licenceInfos/licenceInfo/licence")
                    terms = RawNode(name="LicenceTerms")
                    terms.children.append(RawNode(name="licenceTermsName",
                                                  attrs={"lang": "en"},
                                                  text=lic.scalar()))
                    dist.children.append(terms)
                    for rest in lic_info.all("restrictionsOfUse"):
                        self.drop("licenceInfo/restrictionsOfUse")
            if dist_info.child("availability") is not None:
                self.drop("distributionInfo/availability")
            out.append(dist)
        return out


def from_metashare(tree: RawNode, vocabularies: VocabularySet
                   ) -> tuple[MetadataRecord | None, ValidationReport]:
    """Convert a legacy-profile tree; the report lists every dropped or
    defaulted field plus the usual validation findings."""
    converter = _LegacyConverter()
    converted = converter.convert(tree)
    if converted is None:
        return None, ValidationReport(findings=tuple(converter.findings))
    record, report = validate_tree(converted, vocabularies)
    merged = ValidationReport(findings=tuple(converter.findings) + report.findings,
                              record_id=report.record_id)
    if merged.is_minimal_compliant:
        return record, merged
    return None, merged


def convert_legacy_with_coverage(tree: RawNode, vocabularies: VocabularySet):
    """Like from_metashare but also returns the set of mapping rows used
    (the coverage test drives this)."""
    converter = _LegacyConverter()
    converted = converter.convert(tree)
    if converted is None:
        return None, ValidationReport(findings=tuple(converter.findings)), converter.used_rows
    record, report = validate_tree(converted, vocabularies)
    merged = ValidationReport(findings=tuple(converter.findings) + report.findings,
                              record_id=report.record_id)
    return (record if merged.is_minimal_compliant else None), merged, converter.used_rows
