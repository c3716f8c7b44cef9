"""Tool/data compatibility matching and pipeline composition.

A tool matches a data resource when some input spec and some
(distribution, media part) pair agree on media type, share a data format,
and share a language unless the tool is language-independent. Language
comparison uses the primary subtag only (en matches en-GB).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .exceptions import NotCompliant
from .langtag import primary_subtag
from .schema import (
    Corpus, IOSpec, LanguageDescription, LanguageResource,
    LexicalConceptualResource, MetadataRecord, ToolService,
)

DATA_LR_CLASSES = (Corpus, LexicalConceptualResource, LanguageDescription)


@dataclass(frozen=True)
class MatchEvidence:
    language: str | None
    media_type: str
    data_format: str


@dataclass(frozen=True)
class Failure:
    dimension: str  # "media_type" | "data_format" | "language" | "annotation"
    expected: str
    actual: str


@dataclass(frozen=True)
class CompatibilityReport:
    tool_id: str
    resource_id: str
    compatible: bool
    matched_on: MatchEvidence | None = None
    failures: tuple[Failure, ...] = ()

    def as_dict(self) -> dict:
        out = {"tool": self.tool_id, "resource": self.resource_id,
               "compatible": self.compatible}
        if self.matched_on is not None:
            out["matchedOn"] = {"language": self.matched_on.language,
                                "mediaType": self.matched_on.media_type,
                                "dataFormat": self.matched_on.data_format}
        if self.failures:
            out["failures"] = [{"dimension": f.dimension, "expected": f.expected,
                                "actual": f.actual} for f in self.failures]
        return out


@dataclass(frozen=True)
class Pipeline:
    tools: tuple[str, ...]
    languages: tuple[str, ...]
    stage_formats: tuple[str, ...]  # shared format between consecutive stages

    def as_dict(self) -> dict:
        return {"tools": list(self.tools), "languages": list(self.languages),
                "stageFormats": list(self.stage_formats)}


def _primary_tags(tags) -> set[str]:
    return {primary_subtag(t) for t in tags}


def _resource_parts(resource: LanguageResource):
    """(media part, distribution) candidates of a data resource."""
    parts = getattr(resource, "media_parts", ()) or ()
    dists = getattr(resource, "distributions", ()) or ()
    return parts, dists


def _annotation_ok(spec: IOSpec, resource) -> bool:
    required = set(spec.annotation_types)
    if not required:
        return True
    available = set(getattr(resource, "annotation_types", ()) or ())
    return required <= available


def _match_pair(spec: IOSpec, part, dist, language_dependent: bool,
                resource) -> tuple[MatchEvidence | None, Failure | None]:
    """Evidence for one (input spec, media part, distribution) candidate,
    or the first unmet dimension."""
    if spec.media_type != part.media_type:
        return None, Failure("media_type", spec.media_type or "",
                             part.media_type or "")
    shared_formats = sorted(set(spec.data_formats) & set(dist.data_formats))
    if not shared_formats:
        return None, Failure("data_format", "|".join(sorted(spec.data_formats)),
                             "|".join(sorted(dist.data_formats)))
    language = None
    if language_dependent:
        shared = sorted(_primary_tags(spec.languages) & _primary_tags(part.languages))
        if not shared:
            return None, Failure("language", "|".join(sorted(spec.languages)),
                                 "|".join(sorted(part.languages)))
        language = shared[0]
    if not _annotation_ok(spec, resource):
        return None, Failure(
            "annotation", "|".join(sorted(spec.annotation_types)),
            "|".join(sorted(getattr(resource, "annotation_types", ()) or ())))
    return MatchEvidence(language=language, media_type=part.media_type,
                         data_format=shared_formats[0]), None


def _id_of(record: MetadataRecord) -> str:
    if record.record_id is not None:
        return record.record_id.value
    entity = record.entity
    for ident in getattr(entity, "lr_ids", ()) or ():
        return ident.value
    return "unidentified"


def match(tool_record: MetadataRecord, resource_record: MetadataRecord,
          vocabularies=None) -> CompatibilityReport:
    """Compatibility of one tool with one data resource.

    When ``vocabularies`` is given, both records must be minimal-compliant
    (NotCompliant otherwise).
    """
    if vocabularies is not None:
        from .validation import validate_minimal
        for rec in (tool_record, resource_record):
            report = validate_minimal(rec, vocabularies)
            if not report.is_minimal_compliant:
                raise NotCompliant(report)
    tool = tool_record.entity
    resource = resource_record.entity
    if not isinstance(tool, ToolService):
        raise TypeError("first record must describe a tool/service")
    parts, dists = _resource_parts(resource)
    failures: list[Failure] = []
    for spec in tool.input_specs:
        for part in parts:
            for dist in dists:
                evidence, failure = _match_pair(spec, part, dist,
                                                tool.language_dependent, resource)
                if evidence is not None:
                    return CompatibilityReport(
                        tool_id=_id_of(tool_record),
                        resource_id=_id_of(resource_record),
                        compatible=True, matched_on=evidence)
                failures.append(failure)
    if not tool.input_specs:
        failures.append(Failure("media_type", "an input spec", "none declared"))
    if not parts or not dists:
        failures.append(Failure("media_type", "a media part and a distribution",
                                "none declared"))
    return CompatibilityReport(tool_id=_id_of(tool_record),
                               resource_id=_id_of(resource_record),
                               compatible=False, failures=tuple(failures))


def candidates(tool_record: MetadataRecord, catalogue) -> list[CompatibilityReport]:
    """Compatible data resources for a tool, sorted by resource id.

    ``catalogue`` is an iterable of MetadataRecord.
    """
    out = []
    tool = tool_record.entity
    if not isinstance(tool, ToolService) or not tool.input_specs:
        return []
    for record in catalogue:
        if not isinstance(record.entity, DATA_LR_CLASSES):
            continue
        report = match(tool_record, record)
        if report.compatible:
            out.append(report)
    out.sort(key=lambda r: r.resource_id)
    return out


def _stage_compatible(a: ToolService, b: ToolService) -> str | None:
    """Shared format when some output of A feeds some input of B."""
    for out_spec in a.output_specs:
        for in_spec in b.input_specs:
            if out_spec.media_type != in_spec.media_type:
                continue
            shared = sorted(set(out_spec.data_formats) & set(in_spec.data_formats))
            if not shared:
                continue
            if b.language_dependent:
                langs = _primary_tags(out_spec.languages) & _primary_tags(in_spec.languages)
                if not langs:
                    continue
            return shared[0]
    return None


def _chain_languages(entities: list[ToolService]) -> tuple[str, ...]:
    joint: set[str] | None = None
    for tool in entities:
        if not tool.language_dependent:
            continue
        langs: set[str] = set()
        for spec in tool.input_specs:
            langs.update(_primary_tags(spec.languages))
        joint = langs if joint is None else joint & langs
    return tuple(sorted(joint)) if joint else ()


def compose(tools: dict[str, MetadataRecord], max_len: int) -> list[Pipeline]:
    """All simple tool chains of length 2..max_len whose consecutive stages
    are compatible; lexicographic by tool ids."""
    if not 2 <= max_len <= 5:
        raise ValueError("max_len must be in [2, 5]")
    entities: dict[str, ToolService] = {}
    for tool_id, record in tools.items():
        if isinstance(record.entity, ToolService):
            entities[tool_id] = record.entity
    ids = sorted(entities)
    edge_format: dict[tuple[str, str], str] = {}
    for a in ids:
        for b in ids:
            if a == b:
                continue
            fmt = _stage_compatible(entities[a], entities[b])
            if fmt is not None:
                edge_format[(a, b)] = fmt
    out: list[Pipeline] = []
    for length in range(2, max_len + 1):
        for chain in permutations(ids, length):
            formats = []
            ok = True
            for a, b in zip(chain, chain[1:]):
                fmt = edge_format.get((a, b))
                if fmt is None:
                    ok = False
                    break
                formats.append(fmt)
            if ok:
                out.append(Pipeline(
                    tools=chain,
                    languages=_chain_languages([entities[t] for t in chain]),
                    stage_formats=tuple(formats)))
    out.sort(key=lambda p: (len(p.tools), p.tools))
    return out
