"""Minimal-profile and structural validation with path-addressed findings.

All problems become findings (never exceptions); the same walk powers
import validation, record validation, the API dry-run route and the CLI,
so every surface reports byte-identical results for identical input.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass

from . import fields as F
from . import schema
from .langtag import is_well_formed
from .schema import (
    ContactPoint, Identifier, LangText, LRStub, MetadataRecord, Provenance,
    Ref, Relation, Size, ID_PATTERN,
)
from .tree import RawNode, record_to_tree
from .vocab import VocabularySet

ERROR = "error"
WARNING = "warning"
INFO = "info"

# Closed code list; the UI localizes off these.
CODES = {
    "MISSING_MANDATORY": "required field is absent",
    "MISSING_RECOMMENDED": "recommended field is absent",
    "FUNCTIONAL_SERVICE_INCOMPLETE":
        "a functional service needs a docker download location and an execution endpoint",
    "UNRESOLVED_CONCEPT": "value does not resolve in the bound vocabulary",
    "DEPRECATED_CONCEPT": "value resolves to a deprecated concept",
    "BAD_LANGUAGE_TAG": "language tag is not well-formed BCP-47",
    "BAD_DATE": "not an ISO-8601 calendar date",
    "BAD_BOOLEAN": "not a boolean (true/false)",
    "BAD_NUMBER": "not a number",
    "BAD_IDENTIFIER": "identifier does not match the catalogue pattern",
    "INVALID_VALUE": "value outside the allowed set",
    "INVALID_REF": "reference carries neither a record id nor a named stub",
    "REPEATED_FIELD": "single-valued field appears more than once",
    "MISSING_LANG": "language-tagged text without a language tag",
    "DATE_ORDER": "last update precedes the creation date",
    "STATUS_SOURCE_MISMATCH": "status 'ingested' requires a harvesting source",
    "UNKNOWN_FIELD": "unknown field preserved as an extra",
    "MULTIPLE_ENTITIES": "a record describes exactly one entity",
    "WRONG_ROOT": "not a MetadataRecord document",
    "DEFAULT_APPLIED": "absent value filled with its documented default",
}


@dataclass(frozen=True)
class Finding:
    path: str
    severity: str
    code: str
    message: str
    expected: str | None = None
    actual: str | None = None

    def as_dict(self) -> dict:
        out = {"path": self.path, "severity": self.severity,
               "code": self.code, "message": self.message}
        if self.expected is not None:
            out["expected"] = self.expected
        if self.actual is not None:
            out["actual"] = self.actual
        return out


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...]
    record_id: str | None = None

    @property
    def is_minimal_compliant(self) -> bool:
        return not any(f.severity == ERROR for f in self.findings)

    @property
    def is_fully_compliant(self) -> bool:
        return not any(f.severity in (ERROR, WARNING) for f in self.findings)

    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == ERROR]

    def as_dict(self) -> dict:
        return {
            "recordId": self.record_id,
            "isMinimalCompliant": self.is_minimal_compliant,
            "isFullyCompliant": self.is_fully_compliant,
            "findings": [f.as_dict() for f in self.findings],
        }

    def as_text(self) -> str:
        lines = []
        for f in self.findings:
            lines.append(f"{f.severity.upper():7s} {f.path}: {f.message} [{f.code}]")
        verdict = "minimal-compliant" if self.is_minimal_compliant else "NOT compliant"
        lines.append(f"{'-' * 8} {verdict}; {len(self.errors())} error(s), "
                     f"{sum(1 for f in self.findings if f.severity == WARNING)} warning(s)")
        return "\n".join(lines)


class _Walk:
    """One validation pass over a raw tree."""

    def __init__(self, vocabularies: VocabularySet):
        self.vocabularies = vocabularies
        self.findings: list[Finding] = []
        self.extras: list[schema.Extra] = []

    # -- finding helpers

    def add(self, path: str, severity: str, code: str, detail: str | None = None,
            expected: str | None = None, actual: str | None = None):
        message = CODES[code] if detail is None else f"{CODES[code]}: {detail}"
        self.findings.append(Finding(path=path, severity=severity, code=code,
                                     message=message, expected=expected, actual=actual))

    # -- scalar parsers

    def p_bool(self, node: RawNode, path: str) -> bool | None:
        token = node.scalar().lower()
        if token in ("true", "1", "yes"):
            return True
        if token in ("false", "0", "no"):
            return False
        self.add(path, ERROR, "BAD_BOOLEAN", actual=node.scalar())
        return None

    def p_date(self, node: RawNode, path: str) -> _dt.date | None:
        try:
            return _dt.date.fromisoformat(node.scalar())
        except ValueError:
            self.add(path, ERROR, "BAD_DATE", actual=node.scalar())
            return None

    def p_int(self, node: RawNode, path: str) -> int | None:
        try:
            return int(node.scalar())
        except ValueError:
            self.add(path, ERROR, "BAD_NUMBER", actual=node.scalar())
            return None

    def p_number(self, node: RawNode, path: str) -> float | None:
        try:
            return float(node.scalar())
        except ValueError:
            self.add(path, ERROR, "BAD_NUMBER", actual=node.scalar())
            return None

    def p_langtag(self, node: RawNode, path: str) -> str | None:
        tag = node.scalar()
        if not is_well_formed(tag):
            self.add(path, ERROR, "BAD_LANGUAGE_TAG", actual=tag)
            return None
        return tag

    def p_langtext(self, node: RawNode, path: str) -> LangText:
        lang = node.attrs.get("lang")
        if lang is None:
            self.add(path, WARNING, "MISSING_LANG")
            lang = "und"
        elif not is_well_formed(lang):
            self.add(path, ERROR, "BAD_LANGUAGE_TAG", actual=lang)
        return LangText(lang, node.scalar())

    def p_concept(self, node: RawNode, path: str, spec: F.FieldSpec) -> str | None:
        token = node.scalar()
        vocab = self.vocabularies.get(spec.vocabulary) if spec.vocabulary else None
        if vocab is None:
            self.add(path, ERROR, "UNRESOLVED_CONCEPT",
                     detail=f"no vocabulary {spec.vocabulary!r}", actual=token)
            return None
        bare = token[3:] if token.startswith("ms:") else token
        if "://" in bare:
            concept = vocab.get(bare)
        else:
            hits = vocab.resolve_label(bare)
            concept = vocab.get(hits[0]) if hits else None
        if concept is None:
            self.add(path, ERROR, "UNRESOLVED_CONCEPT",
                     detail=f"{token!r} not in vocabulary {spec.vocabulary}",
                     actual=token)
            return None
        if concept.deprecated:
            self.add(path, WARNING, "DEPRECATED_CONCEPT", actual=concept.iri)
        return concept.iri

    def p_identifier(self, node: RawNode, path: str, spec: F.FieldSpec) -> Identifier:
        scheme = "elg"
        if spec.scheme_attr and spec.scheme_attr in node.attrs:
            raw = node.attrs[spec.scheme_attr]
            scheme = raw[3:] if raw.startswith("ms:") else raw
        value = node.scalar()
        if scheme == "elg" and not ID_PATTERN.match(value):
            self.add(path, ERROR, "BAD_IDENTIFIER", actual=value)
        return Identifier(scheme, value)

    # -- refs and stubs

    _STUB_WRAPPERS = {
        "Person": "Person", "Organization": "Organization", "Document": "Document",
        "Project": "Project", "LicenceTerms": "LicenceTerms", "LanguageResource": "LR",
    }

    def p_stub(self, wrapper: RawNode, kind: str, path: str):
        if kind == "LR":
            names = [self.p_langtext(c, f"{path}.resource_name")
                     for c in wrapper.all("resourceName")]
            for c in wrapper.children:
                if c.name != "resourceName":
                    self.add(f"{path}.{c.name}", INFO, "UNKNOWN_FIELD", detail=c.name)
            return LRStub(names=tuple(names))
        specs, ctor = F.SATELLITE_TABLES[kind]
        kwargs = self.walk_fields(wrapper, specs, f"{path}.", env={}, stub=True)
        return ctor(**kwargs)

    def p_ref(self, node: RawNode, path: str, spec: F.FieldSpec) -> Ref:
        record_id: str | None = None
        stub = None
        ref_node = node.child("RecordReference")
        if ref_node is not None:
            record_id = ref_node.scalar()
        if spec.inline_body:
            body_children = [c for c in node.children if c.name != "RecordReference"]
            if body_children:
                body = RawNode(name=spec.ref_kinds[0], children=body_children)
                stub = self.p_stub(body, spec.ref_kinds[0], path)
        else:
            for child in node.children:
                if child.name == "RecordReference":
                    continue
                kind = self._STUB_WRAPPERS.get(child.name)
                if kind is None:
                    self.add(f"{path}.{child.name}", INFO, "UNKNOWN_FIELD", detail=child.name)
                    continue
                if kind != "LR" and kind not in spec.ref_kinds:
                    self.add(path, ERROR, "INVALID_VALUE",
                             detail=f"{child.name} not allowed here",
                             expected="|".join(spec.ref_kinds), actual=child.name)
                    continue
                stub = self.p_stub(child, kind, path)
        ref = Ref(record_id=record_id, stub=stub)
        if record_id is None and (stub is None or ref.display_name() is None):
            self.add(path, ERROR, "INVALID_REF")
        return ref

    # -- composite parsers

    def p_contactpoints(self, nodes: list[RawNode], path: str) -> tuple[ContactPoint, ...]:
        out = []
        for node in nodes:
            for child in node.children:
                if child.name in ("landingPage", "email"):
                    out.append(ContactPoint(child.name, child.scalar()))
                else:
                    self.add(f"{path}.{child.name}", INFO, "UNKNOWN_FIELD",
                             detail=child.name)
        return tuple(out)

    def p_sizes(self, nodes: list[RawNode], path: str) -> tuple[Size, ...]:
        unit_spec = F.SIZE_FIELDS[1]
        out = []
        for i, node in enumerate(nodes):
            amount_node = node.child("amount")
            unit_node = node.child("sizeUnit")
            amount = self.p_number(amount_node, f"{path}[{i}].amount") if amount_node is not None else None
            if amount_node is None:
                self.add(f"{path}[{i}].amount", ERROR, "MISSING_MANDATORY")
            elif amount is not None and amount < 0:
                self.add(f"{path}[{i}].amount", ERROR, "INVALID_VALUE",
                         detail="size amounts are non-negative", actual=str(amount))
            unit = self.p_concept(unit_node, f"{path}[{i}].unit", unit_spec) if unit_node is not None else None
            if unit_node is None:
                self.add(f"{path}[{i}].unit", ERROR, "MISSING_MANDATORY")
            if amount is not None and amount >= 0 and unit is not None:
                out.append(Size(amount=amount, unit=unit))
        return tuple(out)

    def p_provenance(self, node: RawNode, path: str) -> Provenance | None:
        source = node.child("harvestSource")
        original = node.child("originalIdentifier")
        if source is None or not source.scalar():
            self.add(f"{path}.source_id", ERROR, "MISSING_MANDATORY")
            return None
        if original is None or not original.scalar():
            self.add(f"{path}.original_id", ERROR, "MISSING_MANDATORY")
            return None
        harvest_date = None
        date_node = node.child("harvestDate")
        if date_node is not None:
            harvest_date = self.p_date(date_node, f"{path}.harvest_date")
        return Provenance(source_id=source.scalar(), original_id=original.scalar(),
                          harvest_date=harvest_date)

    # -- the field walk

    def walk_fields(self, parent: RawNode, specs: tuple[F.FieldSpec, ...],
                    prefix: str, env: dict, stub: bool = False,
                    extras_level: str | None = None,
                    skip_names: tuple[str, ...] = ()) -> dict:
        values: dict[str, object] = {}
        known = set(skip_names)
        for spec in specs:
            known.add(spec.xml)
            path = f"{prefix}{spec.path}"
            nodes = parent.all(spec.xml)
            values[spec.attr] = self.walk_one(parent, spec, nodes, path, env, stub)
        for child in parent.children:
            if child.name not in known:
                self.add(f"{prefix}{child.name}", INFO, "UNKNOWN_FIELD", detail=child.name)
                if not stub and extras_level is not None:
                    self.extras.append(schema.Extra(extras_level, child))
        return values

    def _required(self, spec: F.FieldSpec, env: dict) -> bool:
        if spec.level == F.MANDATORY:
            return True
        if spec.level == F.MANDATORY_IF:
            return bool(env.get(spec.condition, False))
        return False

    def _report_missing(self, spec: F.FieldSpec, path: str, parent: RawNode, env: dict):
        required = self._required(spec, env)
        if required:
            if spec.either_with is not None:
                # satisfied when the alternative is present
                alt_xml = _sibling_xml(spec)
                if alt_xml and parent.all(alt_xml):
                    return
            code = ("FUNCTIONAL_SERVICE_INCOMPLETE"
                    if spec.path in F.FUNCTIONAL_PAIR else "MISSING_MANDATORY")
            self.add(path, ERROR, code)
        elif spec.level == F.RECOMMENDED:
            self.add(path, WARNING, "MISSING_RECOMMENDED")

    def walk_one(self, parent: RawNode, spec: F.FieldSpec, nodes: list[RawNode],
                 path: str, env: dict, stub: bool):
        kind = spec.kind
        multi = kind in ("textlist", "langmap", "langlist", "langtags", "concepts",
                         "identifiers", "contactpoints", "reflist", "relations",
                         "sizes", "objects")
        if not nodes:
            if not stub:
                self._report_missing(spec, path, parent, env)
            if spec.default is not None and kind in ("text", "bool", "status"):
                if spec.level == F.RECOMMENDED and not stub:
                    self.add(path, INFO, "DEFAULT_APPLIED", detail=str(spec.default))
                return spec.default
            return () if multi else None
        if not multi and len(nodes) > 1:
            self.add(path, WARNING, "REPEATED_FIELD", actual=str(len(nodes)))
        node = nodes[0]

        if kind == "text":
            return node.scalar()
        if kind == "textlist":
            return tuple(n.scalar() for n in nodes)
        if kind == "int":
            return self.p_int(node, path)
        if kind == "number":
            return self.p_number(node, path)
        if kind == "bool":
            return self.p_bool(node, path)
        if kind == "date":
            return self.p_date(node, path)
        if kind == "fixed":
            token = node.scalar()
            bare = token[3:] if token.startswith("ms:") else token
            if bare != spec.fixed_value:
                self.add(path, ERROR, "INVALID_VALUE",
                         expected=spec.fixed_value, actual=token)
            return spec.fixed_value
        if kind == "status":
            token = node.scalar()
            if token not in schema.CURATION_STATUSES:
                self.add(path, ERROR, "INVALID_VALUE",
                         expected="|".join(schema.CURATION_STATUSES), actual=token)
                return spec.default
            return token
        if kind == "langmap":
            items = [self.p_langtext(n, path) for n in nodes]
            langs = [lt.lang for lt in items]
            if len(set(langs)) != len(langs):
                self.add(path, WARNING, "REPEATED_FIELD",
                         detail="one text per language; last value wins")
            return tuple(items)
        if kind == "langlist":
            return tuple(self.p_langtext(n, path) for n in nodes)
        if kind == "langtags":
            tags = [self.p_langtag(n, path) for n in nodes]
            return tuple(t for t in tags if t is not None)
        if kind == "concept":
            return self.p_concept(node, path, spec)
        if kind == "concepts":
            iris = [self.p_concept(n, path, spec) for n in nodes]
            out = tuple(i for i in iris if i is not None)
            if self._required(spec, env) and spec.min_count and len(out) < spec.min_count:
                if not any(i is None for i in iris):
                    self.add(path, ERROR, "MISSING_MANDATORY")
            return out
        if kind == "identifier":
            return self.p_identifier(node, path, spec)
        if kind == "identifiers":
            return tuple(self.p_identifier(n, path, spec) for n in nodes)
        if kind == "contactpoints":
            out = self.p_contactpoints(nodes, path)
            if not out and self._required(spec, env) and not stub:
                self.add(path, ERROR, "MISSING_MANDATORY")
            return out
        if kind == "ref":
            return self.p_ref(node, path, spec)
        if kind == "reflist":
            return tuple(self.p_ref(n, f"{path}[{i}]", spec) for i, n in enumerate(nodes))
        if kind == "relations":
            out = []
            for i, n in enumerate(nodes):
                type_node = n.child("relationType")
                target_node = n.child("relatedLR")
                if type_node is None or target_node is None:
                    self.add(f"{path}[{i}]", ERROR, "INVALID_VALUE",
                             detail="a relation needs relationType and relatedLR")
                    continue
                ref_spec = F.FieldSpec(attr="", path="", xml="relatedLR", kind="ref",
                                       ref_kinds=("LR",))
                target = self.p_ref(target_node, f"{path}[{i}].target", ref_spec)
                out.append(Relation(type=type_node.scalar(), target=target))
            return tuple(out)
        if kind == "sizes":
            return self.p_sizes(nodes, path)
        if kind == "provenance":
            return self.p_provenance(node, f"{path}")
        if kind == "object":
            ctor = F.OBJECT_CTORS[spec.sub]
            kwargs = self.walk_fields(node, spec.sub, f"{path}.", env, stub,
                                      extras_level=path)
            return ctor(**kwargs)
        if kind == "objects":
            ctor = F.OBJECT_CTORS[spec.sub]
            out = []
            for i, n in enumerate(nodes):
                kwargs = self.walk_fields(n, spec.sub, f"{path}[{i}].", env, stub,
                                          extras_level=f"{path}[{i}]")
                out.append(ctor(**kwargs))
            return tuple(out)
        raise AssertionError(f"unhandled field kind {kind}")


def _sibling_xml(spec: F.FieldSpec) -> str | None:
    for table in (F.SOFTWARE_DIST_FIELDS, F.DATA_DIST_FIELDS, F.LICENCE_FIELDS):
        for other in table:
            if other.path == spec.either_with:
                return other.xml
    return None


def _condition_env(subtype_node: RawNode | None) -> dict:
    env: dict[str, bool] = {}
    if subtype_node is not None:
        def raw_bool(name: str, default: bool) -> bool:
            node = subtype_node.child(name)
            if node is None:
                return default
            return node.scalar().lower() in ("true", "1", "yes")

        env["language_dependent"] = raw_bool("languageDependent", True)
        env["is_annotated"] = raw_bool("isAnnotated", False)
        env["is_functional_service"] = raw_bool("isFunctionalService", False)
        ld = subtype_node.child("ldSubtype")
        token = ld.scalar() if ld is not None else ""
        bare = token[3:] if token.startswith("ms:") else token
        env["ld_subtype_is_model"] = schema.concept_local_name(bare) == "model"
    return env


def _normalize_tool_node(node: RawNode) -> None:
    """Fold tool-level distribution fields (legacy appendix placement)
    into the software distributions that lack them."""
    dists = node.all("SoftwareDistribution")
    if not dists:
        return
    movable = {"digest": "digest", "downloadLocation": "downloadLocation",
               "LicenceTerms": "LicenceTerms"}
    moved: list[RawNode] = []
    for child in list(node.children):
        if child.name in movable:
            for dist in dists:
                if child.name == "LicenceTerms" or dist.child(child.name) is None:
                    dist.children.append(child)
            node.children.remove(child)
            moved.append(child)


_ENTITY_WRAPPERS = {
    "LanguageResource": None,
    "Organization": "Organization",
    "Person": "Person",
    "Project": "Project",
    "Document": "Document",
    "LicenceTerms": "LicenceTerms",
}


def validate_tree(tree: RawNode, vocabularies: VocabularySet
                  ) -> tuple[MetadataRecord | None, ValidationReport]:
    """Apply the whole matrix to a raw tree; construct the record when no
    errors were found."""
    walk = _Walk(vocabularies)
    if tree.name != "MetadataRecord":
        walk.add("", ERROR, "WRONG_ROOT", actual=tree.name)
        return None, ValidationReport(findings=tuple(walk.findings))

    # Envelope status first: the source condition needs it.
    status_nodes = tree.all("curationStatus")
    raw_status = status_nodes[0].scalar() if status_nodes else None
    has_source = bool(tree.all("source"))
    env = {"status_ingested": raw_status == "ingested"}

    envelope = walk.walk_fields(tree, F.ENVELOPE_FIELDS, "", env,
                                extras_level="", skip_names=("DescribedEntity",))

    if envelope.get("curation_status") in (None, "claimed") and not status_nodes:
        envelope["curation_status"] = "ingested" if has_source else "claimed"
    if envelope.get("curation_status") == "ingested" and envelope.get("source") is None:
        walk.add("curation_status", ERROR, "STATUS_SOURCE_MISMATCH")
    created = envelope.get("creation_date")
    updated = envelope.get("last_updated")
    if created is not None and updated is not None and updated < created:
        walk.add("last_updated", ERROR, "DATE_ORDER",
                 expected=f">= {created.isoformat()}", actual=updated.isoformat())

    entity = None
    described = tree.all("DescribedEntity")
    if not described:
        walk.add("entity", ERROR, "MISSING_MANDATORY")
    elif len(described) > 1:
        walk.add("entity", ERROR, "MULTIPLE_ENTITIES", actual=str(len(described)))
    else:
        entity = _walk_entity(described[0], walk)

    record = None
    if not any(f.severity == ERROR for f in walk.findings) and entity is not None:
        record = MetadataRecord(
            record_id=envelope["record_id"],
            creation_date=envelope["creation_date"],
            last_updated=envelope["last_updated"],
            curator=envelope["curator"],
            creator=envelope["creator"],
            complies_with=envelope["complies_with"] or schema.SCHEMA_NAME,
            source=envelope["source"],
            curation_status=envelope["curation_status"] or "claimed",
            entity=entity,
            extras=tuple(walk.extras),
        )
    record_id = None
    if envelope.get("record_id") is not None:
        record_id = envelope["record_id"].value
    report = ValidationReport(findings=tuple(walk.findings), record_id=record_id)
    return record, report


def _walk_entity(described: RawNode, walk: _Walk):
    wrappers = [c for c in described.children if c.name in _ENTITY_WRAPPERS]
    unknown = [c for c in described.children if c.name not in _ENTITY_WRAPPERS]
    for node in unknown:
        walk.add(f"entity.{node.name}", ERROR, "INVALID_VALUE",
                 detail="unknown entity kind", actual=node.name)
    if not wrappers:
        if not unknown:
            walk.add("entity", ERROR, "MISSING_MANDATORY")
        return None
    if len(wrappers) > 1:
        walk.add("entity", ERROR, "MULTIPLE_ENTITIES", actual=str(len(wrappers)))
        return None
    wrapper = wrappers[0]

    if wrapper.name != "LanguageResource":
        subtype = wrapper.name
        specs, ctor = F.SATELLITE_TABLES[subtype]
        kwargs = walk.walk_fields(wrapper, specs, "entity.", {}, extras_level="entity")
        return _try_build(ctor, kwargs, walk)

    et = wrapper.child("entityType")
    if et is not None and et.scalar() != "languageResource":
        walk.add("entity.entityType", ERROR, "INVALID_VALUE",
                 expected="languageResource", actual=et.scalar())

    subclass = wrapper.child("LRSubclass")
    sub_node = None
    subtype = None
    if subclass is not None:
        candidates = [c for c in subclass.children if c.name in F.LR_SUBTYPE_TABLES]
        for c in subclass.children:
            if c.name not in F.LR_SUBTYPE_TABLES:
                walk.add(f"entity.LRSubclass.{c.name}", ERROR, "INVALID_VALUE",
                         detail="unknown resource subtype", actual=c.name)
        if len(candidates) == 1:
            sub_node = candidates[0]
            subtype = sub_node.name
        elif len(candidates) > 1:
            walk.add("entity.LRSubclass", ERROR, "MULTIPLE_ENTITIES",
                     actual=str(len(candidates)))
    else:
        walk.add("entity.LRSubclass", ERROR, "MISSING_MANDATORY")

    if sub_node is None or subtype is None:
        return None

    if subtype == "ToolService":
        _normalize_tool_node(sub_node)

    env = _condition_env(sub_node)
    kind_token = F.LR_SUBTYPE_TABLES[subtype][0]
    lr_type = sub_node.child("lrType")
    if lr_type is not None and lr_type.scalar() != kind_token:
        walk.add("entity.lrType", ERROR, "INVALID_VALUE",
                 expected=kind_token, actual=lr_type.scalar())

    kwargs = walk.walk_fields(wrapper, F.LR_COMMON_FIELDS, "entity.", env,
                              extras_level="entity",
                              skip_names=("entityType", "LRSubclass"))
    sub_kwargs = walk.walk_fields(sub_node, F.LR_SUBTYPE_TABLES[subtype][1],
                                  "entity.", env,
                                  extras_level="entity.LRSubclass",
                                  skip_names=("lrType",))
    kwargs.update(sub_kwargs)
    return _try_build(F.LR_SUBTYPE_TABLES[subtype][2], kwargs, walk)


def _try_build(ctor, kwargs: dict, walk: _Walk):
    cleaned = {}
    for key, value in kwargs.items():
        if value is None:
            continue
        cleaned[key] = value
    try:
        return ctor(**cleaned)
    except (TypeError, ValueError) as exc:
        walk.add("entity", ERROR, "INVALID_VALUE", detail=str(exc))
        return None


def validate_import(tree: RawNode, vocabularies: VocabularySet
                    ) -> tuple[MetadataRecord | None, ValidationReport]:
    """Validate a parsed-but-unchecked tree; build the record iff error-free.

    Unknown elements become info findings and survive in the record's
    extras sidecar.
    """
    return validate_tree(tree, vocabularies)


def validate_minimal(record: MetadataRecord, vocabularies: VocabularySet
                     ) -> ValidationReport:
    """Validate a constructed record against the minimal-profile matrix.

    Runs the identical walk the importer uses (over the record's own
    canonical tree), so reports are deterministic and surface-independent.
    """
    _, report = validate_tree(record_to_tree(record), vocabularies)
    return report
