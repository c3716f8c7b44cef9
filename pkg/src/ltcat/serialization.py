"""Record serialization: dialect XML, canonical JSON, and JSON-LD export.

Canonical output is byte-deterministic: fixed element order (field
table), 2-space indentation, sorted JSON keys. The JSON form mirrors the
XML element structure 1:1 (arrays for repeatable elements, language-tag
keys for language-tagged text); docs/formats.md documents the mapping.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from xml.sax.saxutils import escape, quoteattr

from . import fields as F
from . import schema
from .exceptions import (
    JsonSyntaxError, NamespaceError, NotCompliant, UnboundTerm,
    WrongRootError, WrongShapeError,
)
from .schema import LangText, LRStub, MetadataRecord, Ref, concept_local_name
from .tree import MS_NAMESPACE, RawNode, parse_xml_tree, record_to_tree, root_namespace
from .validation import validate_minimal
from .vocab import METASHARE_NS, OMTD_NS, VocabularySet

CONTEXT_FILENAME = "elg-share-context.jsonld"


# ---------------------------------------------------------------------------
# XML


def parse_xml(text: str) -> RawNode:
    """Parse dialect XML into a raw record tree.

    Raises XmlSyntaxError, WrongRootError or NamespaceError.
    """
    ns = root_namespace(text)
    if ns is not None and ns != MS_NAMESPACE:
        raise NamespaceError(f"ms: bound to {ns!r}, expected {MS_NAMESPACE!r}")
    tree = parse_xml_tree(text)
    if tree.name != "MetadataRecord":
        raise WrongRootError(f"root is {tree.name!r}, expected MetadataRecord")
    return tree


_PLAIN_ATTRS = {"lang": "xml:lang"}


def _attr_name(name: str) -> str:
    return _PLAIN_ATTRS.get(name, f"ms:{name}")


def _write_node(node: RawNode, depth: int, out: list[str]) -> None:
    indent = "  " * depth
    attrs = "".join(
        f" {_attr_name(k)}={quoteattr(v)}" for k, v in sorted(node.attrs.items())
    )
    tag = f"ms:{node.name}"
    if node.children:
        out.append(f"{indent}<{tag}{attrs}>")
        for child in node.children:
            _write_node(child, depth + 1, out)
        out.append(f"{indent}</{tag}>")
    elif node.text is not None and node.text.strip():
        out.append(f"{indent}<{tag}{attrs}>{escape(node.text.strip())}</{tag}>")
    else:
        out.append(f"{indent}<{tag}{attrs}/>")


def serialize_tree(tree: RawNode) -> str:
    body: list[str] = []
    _write_node(tree, 0, body)
    first = body[0]
    if first.endswith("/>"):
        body[0] = first[:-2] + f' xmlns:ms="{MS_NAMESPACE}"/>'
    else:
        cut = first.index(">")
        body[0] = first[:cut] + f' xmlns:ms="{MS_NAMESPACE}"' + first[cut:]
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + "\n".join(body) + "\n"


def _gate(record: MetadataRecord, vocabularies: VocabularySet) -> None:
    report = validate_minimal(record, vocabularies)
    if not report.is_minimal_compliant:
        raise NotCompliant(report)


def emit_xml(record: MetadataRecord, vocabularies: VocabularySet) -> str:
    """Canonical dialect XML; raises NotCompliant on a non-compliant record."""
    _gate(record, vocabularies)
    return serialize_tree(record_to_tree(record))


# ---------------------------------------------------------------------------
# Canonical JSON


def _json_langmap(items: tuple[LangText, ...]) -> dict:
    return {lt.lang: lt.text for lt in items}


def _json_ref(ref: Ref, inline: bool = False) -> dict:
    out: dict = {}
    if ref.record_id is not None:
        out["record"] = ref.record_id
    if ref.stub is not None:
        if isinstance(ref.stub, LRStub):
            out["LanguageResource"] = {"resourceName": _json_langmap(ref.stub.names)}
        elif inline:
            out.update(_json_fields(ref.stub,
                                    F.SATELLITE_TABLES[type(ref.stub).__name__][0]))
        else:
            subtype = type(ref.stub).__name__
            out[subtype] = _json_fields(ref.stub, F.SATELLITE_TABLES[subtype][0])
    return out


def _node_to_json(node: RawNode):
    """Generic mapping for extras (unknown elements)."""
    if not node.children:
        return node.scalar()
    obj: dict = {}
    for child in node.children:
        value = _node_to_json(child)
        if child.name in obj:
            if not isinstance(obj[child.name], list):
                obj[child.name] = [obj[child.name]]
            obj[child.name].append(value)
        else:
            obj[child.name] = value
    return obj


def _json_value(obj, spec: F.FieldSpec):
    value = getattr(obj, spec.attr)
    kind = spec.kind
    if value is None:
        return None
    if kind in ("text", "status"):
        return value
    if kind in ("int", "number"):
        return int(value) if float(value).is_integer() else float(value)
    if kind == "textlist":
        return list(value) or None
    if kind == "bool":
        return bool(value)
    if kind == "date":
        return value.isoformat()
    if kind == "fixed":
        return f"ms:{value}"
    if kind == "langmap":
        return _json_langmap(value) or None
    if kind == "langlist":
        return [{lt.lang: lt.text} for lt in value] or None
    if kind == "langtags":
        return list(value) or None
    if kind == "concept":
        local = concept_local_name(value)
        return f"ms:{local}" if spec.curie else local
    if kind == "concepts":
        out = [f"ms:{concept_local_name(v)}" if spec.curie else concept_local_name(v)
               for v in value]
        return out or None
    if kind == "identifier":
        return {"scheme": f"ms:{value.scheme}", "value": value.value}
    if kind == "identifiers":
        return [{"scheme": f"ms:{i.scheme}", "value": i.value} for i in value] or None
    if kind == "contactpoints":
        return [{cp.kind: cp.value} for cp in value] or None
    if kind == "ref":
        return _json_ref(value, spec.inline_body)
    if kind == "reflist":
        return [_json_ref(r, spec.inline_body) for r in value] or None
    if kind == "relations":
        return [{"relationType": rel.type, "relatedLR": _json_ref(rel.target)}
                for rel in value] or None
    if kind == "sizes":
        return [{"amount": int(s.amount) if float(s.amount).is_integer() else s.amount,
                 "sizeUnit": f"ms:{concept_local_name(s.unit)}"} for s in value] or None
    if kind == "provenance":
        out = {"harvestSource": value.source_id, "originalIdentifier": value.original_id}
        if value.harvest_date is not None:
            out["harvestDate"] = value.harvest_date.isoformat()
        return out
    if kind == "object":
        return _json_fields(value, spec.sub)
    if kind == "objects":
        return [_json_fields(item, spec.sub) for item in value] or None
    raise AssertionError(f"unhandled field kind {kind}")


def _merge_extra(obj: dict, node: RawNode) -> None:
    value = _node_to_json(node)
    if node.name in obj:
        existing = obj[node.name]
        if not isinstance(existing, list):
            obj[node.name] = [existing]
        obj[node.name].append(value)
    else:
        obj[node.name] = value


def _json_fields(item, specs: tuple[F.FieldSpec, ...],
                 extras: tuple = (), level: str | None = None) -> dict:
    out: dict = {}
    for spec in specs:
        value = _json_value(item, spec)
        if value is not None:
            out[spec.json] = value
    if level is not None:
        for extra in extras:
            if extra.path == level:
                _merge_extra(out, extra.node)
    return out


def record_to_json_obj(record: MetadataRecord) -> dict:
    entity = record.entity
    subtype = schema.subtype_of(entity)
    envelope = _json_fields(record, F.ENVELOPE_FIELDS, record.extras, "")
    if isinstance(entity, schema.LanguageResource):
        kind_token, specs, _cls = F.LR_SUBTYPE_TABLES[subtype]
        sub = {"lrType": kind_token}
        sub.update(_json_fields(entity, specs, record.extras, "entity.LRSubclass"))
        lr = {"entityType": "languageResource"}
        lr.update(_json_fields(entity, F.LR_COMMON_FIELDS, record.extras, "entity"))
        lr["LRSubclass"] = {subtype: sub}
        envelope["DescribedEntity"] = {"LanguageResource": lr}
    else:
        body = _json_fields(entity, F.entity_fields(subtype), record.extras, "entity")
        envelope["DescribedEntity"] = {subtype: body}
    return {"MetadataRecord": envelope}


def emit_json(record: MetadataRecord, vocabularies: VocabularySet) -> str:
    """Canonical JSON mirroring the XML structure; sorted keys."""
    _gate(record, vocabularies)
    return json.dumps(record_to_json_obj(record), sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


# --- JSON -> tree -----------------------------------------------------------


def _nodes_from_generic(name: str, value) -> list[RawNode]:
    if isinstance(value, list):
        out = []
        for item in value:
            out.extend(_nodes_from_generic(name, item))
        return out
    if isinstance(value, dict):
        node = RawNode(name=name)
        for key, sub in value.items():
            node.children.extend(_nodes_from_generic(key, sub))
        return [node]
    if isinstance(value, bool):
        return [RawNode(name=name, text="true" if value else "false")]
    return [RawNode(name=name, text=str(value))]


def _nodes_from_ref(spec: F.FieldSpec, value, errors: list[str]) -> RawNode:
    node = RawNode(name=spec.xml)
    if not isinstance(value, dict):
        errors.append(f"{spec.json}: ref must be an object")
        return node
    if "record" in value:
        node.children.append(RawNode(name="RecordReference", text=str(value["record"])))
    rest = {k: v for k, v in value.items() if k != "record"}
    handled: set[str] = set()
    for key, sub in rest.items():
        if key == "LanguageResource" and isinstance(sub, dict):
            wrapper = RawNode(name="LanguageResource")
            for lang, text in sorted(sub.get("resourceName", {}).items()):
                wrapper.children.append(RawNode(name="resourceName",
                                                attrs={"lang": lang}, text=text))
            if spec.inline_body:
                node.children.extend(wrapper.children)
            else:
                node.children.append(wrapper)
            handled.add(key)
        elif key in F.SATELLITE_TABLES and isinstance(sub, dict):
            body = _tree_fields(sub, F.SATELLITE_TABLES[key][0], errors)
            if spec.inline_body:
                node.children.extend(body)
            else:
                node.children.append(RawNode(name=key, children=body))
            handled.add(key)
    remaining = {k: v for k, v in rest.items() if k not in handled}
    if not remaining:
        return node
    if spec.inline_body and spec.ref_kinds and spec.ref_kinds[0] != "LR":
        # inline stub fields mirror the XML body: canonical field order
        node.children.extend(_tree_fields(
            remaining, F.SATELLITE_TABLES[spec.ref_kinds[0]][0], errors))
    else:
        for key, sub in remaining.items():
            node.children.extend(_nodes_from_generic(key, sub))
    return node


def _nodes_from_value(spec: F.FieldSpec, value, errors: list[str]) -> list[RawNode]:
    kind = spec.kind
    xml = spec.xml
    if kind in ("text", "status", "fixed", "concept", "int", "number", "date"):
        return [RawNode(name=xml, text=str(value))]
    if kind == "bool":
        return [RawNode(name=xml, text="true" if value else "false")]
    if kind in ("textlist", "langtags", "concepts"):
        items = value if isinstance(value, list) else [value]
        return [RawNode(name=xml, text=str(v)) for v in items]
    if kind == "langmap":
        if not isinstance(value, dict):
            errors.append(f"{spec.json}: expected a language map")
            return []
        return [RawNode(name=xml, attrs={"lang": lang}, text=str(text))
                for lang, text in sorted(value.items())]
    if kind == "langlist":
        items = value if isinstance(value, list) else [value]
        out = []
        for item in items:
            if isinstance(item, dict):
                for lang, text in sorted(item.items()):
                    out.append(RawNode(name=xml, attrs={"lang": lang}, text=str(text)))
            else:
                out.append(RawNode(name=xml, text=str(item)))
        return out
    if kind in ("identifier", "identifiers"):
        items = value if isinstance(value, list) else [value]
        out = []
        for item in items:
            if not isinstance(item, dict) or "value" not in item:
                errors.append(f"{spec.json}: identifier needs scheme and value")
                continue
            attrs = {}
            if spec.scheme_attr and "scheme" in item:
                attrs[spec.scheme_attr] = str(item["scheme"])
            out.append(RawNode(name=xml, attrs=attrs, text=str(item["value"])))
        return out
    if kind == "contactpoints":
        items = value if isinstance(value, list) else [value]
        out = []
        for item in items:
            node = RawNode(name=xml)
            if isinstance(item, dict):
                for key, sub in sorted(item.items()):
                    node.children.append(RawNode(name=key, text=str(sub)))
            out.append(node)
        return out
    if kind == "ref":
        return [_nodes_from_ref(spec, value, errors)]
    if kind == "reflist":
        items = value if isinstance(value, list) else [value]
        return [_nodes_from_ref(spec, item, errors) for item in items]
    if kind == "relations":
        items = value if isinstance(value, list) else [value]
        out = []
        for item in items:
            if not isinstance(item, dict):
                errors.append(f"{spec.json}: relation must be an object")
                continue
            node = RawNode(name=xml)
            if "relationType" in item:
                node.children.append(RawNode(name="relationType",
                                             text=str(item["relationType"])))
            target_spec = F.FieldSpec(attr="", path="", xml="relatedLR", kind="ref",
                                      ref_kinds=("LR",))
            node.children.append(_nodes_from_ref(target_spec,
                                                 item.get("relatedLR", {}), errors))
            out.append(node)
        return out
    if kind == "sizes":
        items = value if isinstance(value, list) else [value]
        out = []
        for item in items:
            node = RawNode(name=xml)
            if isinstance(item, dict):
                if "amount" in item:
                    amt = item["amount"]
                    text = str(int(amt)) if isinstance(amt, (int, float)) and float(amt).is_integer() else str(amt)
                    node.children.append(RawNode(name="amount", text=text))
                if "sizeUnit" in item:
                    node.children.append(RawNode(name="sizeUnit", text=str(item["sizeUnit"])))
            out.append(node)
        return out
    if kind == "provenance":
        node = RawNode(name=xml)
        if isinstance(value, dict):
            for key in ("harvestSource", "originalIdentifier", "harvestDate"):
                if key in value:
                    node.children.append(RawNode(name=key, text=str(value[key])))
        return [node]
    if kind == "object":
        if not isinstance(value, dict):
            errors.append(f"{spec.json}: expected an object")
            return []
        return [RawNode(name=xml, children=_tree_fields(value, spec.sub, errors))]
    if kind == "objects":
        items = value if isinstance(value, list) else [value]
        out = []
        for item in items:
            if not isinstance(item, dict):
                errors.append(f"{spec.json}: expected objects")
                continue
            out.append(RawNode(name=xml, children=_tree_fields(item, spec.sub, errors)))
        return out
    raise AssertionError(f"unhandled field kind {kind}")


def _tree_fields(obj: dict, specs: tuple[F.FieldSpec, ...], errors: list[str],
                 skip: tuple[str, ...] = ()) -> list[RawNode]:
    known = {spec.json for spec in specs} | set(skip)
    out: list[RawNode] = []
    for spec in specs:
        if spec.json in obj and obj[spec.json] is not None:
            out.extend(_nodes_from_value(spec, obj[spec.json], errors))
    for key, value in obj.items():
        if key not in known:
            out.extend(_nodes_from_generic(key, value))
    return out


def json_obj_to_tree(obj: dict) -> RawNode:
    """Canonical JSON object -> raw record tree (inverse of the emitter)."""
    if not isinstance(obj, dict) or "MetadataRecord" not in obj:
        raise WrongShapeError("MetadataRecord root missing")
    body = obj["MetadataRecord"]
    if not isinstance(body, dict):
        raise WrongShapeError("MetadataRecord must be an object")
    errors: list[str] = []
    root = RawNode(name="MetadataRecord")
    root.children.extend(_tree_fields(body, F.ENVELOPE_FIELDS, errors,
                                      skip=("DescribedEntity",)))
    described_obj = body.get("DescribedEntity")
    if described_obj is not None:
        if not isinstance(described_obj, dict):
            raise WrongShapeError("DescribedEntity must be an object")
        described = RawNode(name="DescribedEntity")
        for key, entity_obj in described_obj.items():
            if key == "LanguageResource" and isinstance(entity_obj, dict):
                lr = RawNode(name="LanguageResource")
                if "entityType" in entity_obj:
                    lr.children.append(RawNode(name="entityType",
                                               text=str(entity_obj["entityType"])))
                lr.children.extend(_tree_fields(entity_obj, F.LR_COMMON_FIELDS, errors,
                                                skip=("entityType", "LRSubclass")))
                subclass_obj = entity_obj.get("LRSubclass")
                if isinstance(subclass_obj, dict):
                    subclass = RawNode(name="LRSubclass")
                    for sub_name, sub_obj in subclass_obj.items():
                        if sub_name in F.LR_SUBTYPE_TABLES and isinstance(sub_obj, dict):
                            sub = RawNode(name=sub_name)
                            if "lrType" in sub_obj:
                                sub.children.append(RawNode(name="lrType",
                                                            text=str(sub_obj["lrType"])))
                            sub.children.extend(_tree_fields(
                                sub_obj, F.LR_SUBTYPE_TABLES[sub_name][1], errors,
                                skip=("lrType",)))
                            subclass.children.append(sub)
                        else:
                            subclass.children.extend(_nodes_from_generic(sub_name, sub_obj))
                    lr.children.append(subclass)
                described.children.append(lr)
            elif key in F.SATELLITE_TABLES and isinstance(entity_obj, dict):
                described.children.append(RawNode(
                    name=key,
                    children=_tree_fields(entity_obj, F.SATELLITE_TABLES[key][0], errors)))
            else:
                described.children.extend(_nodes_from_generic(key, entity_obj))
        root.children.append(described)
    return root


def parse_json(text: str) -> RawNode:
    """Canonical JSON text -> raw record tree.

    Raises JsonSyntaxError or WrongShapeError.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JsonSyntaxError(str(exc))
    return json_obj_to_tree(obj)


# ---------------------------------------------------------------------------
# JSON-LD


@dataclass(frozen=True)
class IriBindingTable:
    """Term -> property IRI map plus the set of known concept IRIs."""

    terms: dict
    concepts: frozenset


def _context_terms() -> dict[str, str]:
    terms: dict[str, str] = {}
    tables = [F.ENVELOPE_FIELDS, F.LR_COMMON_FIELDS, F.SIZE_FIELDS,
              F.IOSPEC_INPUT_FIELDS, F.IOSPEC_OUTPUT_FIELDS, F.MEDIA_PART_FIELDS,
              F.SOFTWARE_DIST_FIELDS, F.DATA_DIST_FIELDS, F.MODEL_DETAILS_FIELDS]
    tables.extend(specs for _, specs, _ in F.LR_SUBTYPE_TABLES.values())
    tables.extend(specs for specs, _ in F.SATELLITE_TABLES.values())
    for table in tables:
        for spec in table:
            terms.setdefault(spec.xml, METASHARE_NS + spec.xml)
    for name in ("MetadataRecord", "DescribedEntity", "LanguageResource", "LRSubclass",
                 "RecordReference", "relationType", "relatedLR", "relation",
                 "landingPage", "email", "amount", "sizeUnit", "entityType", "lrType",
                 "harvestSource", "originalIdentifier", "harvestDate",
                 *F.LR_SUBTYPE_TABLES, *F.SATELLITE_TABLES):
        terms.setdefault(name, METASHARE_NS + name)
    return terms


def context_object() -> dict:
    """The shipped JSON-LD context (generated from the field table)."""
    ctx: dict = {"ms": METASHARE_NS, "omtd": OMTD_NS}
    for term, iri in sorted(_context_terms().items()):
        ctx[term] = {"@id": iri.replace(METASHARE_NS, "ms:").replace(OMTD_NS, "omtd:")}
    return {"@context": ctx}


def load_context() -> dict:
    path = resources.files("ltcat").joinpath(f"data/{CONTEXT_FILENAME}")
    return json.loads(path.read_text(encoding="utf-8"))


def default_bindings(vocabularies: VocabularySet) -> IriBindingTable:
    concepts = set()
    for vocab_id in vocabularies.ids():
        for concept in vocabularies[vocab_id].concepts:
            concepts.add(concept.iri)
    return IriBindingTable(terms=_context_terms(), concepts=frozenset(concepts))


def record_subject_iri(record: MetadataRecord) -> str:
    rid = record.record_id.value if record.record_id is not None else "unidentified"
    return f"{METASHARE_NS}record/{rid}"


class _LdEmitter:
    def __init__(self, bindings: IriBindingTable):
        self.bindings = bindings

    def term(self, name: str, path: str) -> str:
        if name not in self.bindings.terms:
            raise UnboundTerm(path)
        return name

    def concept(self, iri: str, path: str) -> dict:
        if iri not in self.bindings.concepts:
            raise UnboundTerm(path)
        return {"@id": iri}

    def ref(self, ref: Ref, path: str):
        if ref.record_id is not None:
            return {"@id": f"{METASHARE_NS}record/{ref.record_id}"}
        if isinstance(ref.stub, LRStub):
            return {"@type": self.term("LanguageResource", path),
                    self.term("resourceName", path): _ld_langlist(ref.stub.names)}
        subtype = type(ref.stub).__name__
        node = self.fields(ref.stub, F.SATELLITE_TABLES[subtype][0], path)
        node["@type"] = self.term(subtype, path)
        return node

    def value(self, obj, spec: F.FieldSpec, path: str):
        value = getattr(obj, spec.attr)
        kind = spec.kind
        if value is None:
            return None
        if kind in ("text", "status", "fixed"):
            return value
        if kind in ("int", "number"):
            return int(value) if float(value).is_integer() else float(value)
        if kind == "textlist":
            return list(value) or None
        if kind == "bool":
            return bool(value)
        if kind == "date":
            return value.isoformat()
        if kind in ("langmap", "langlist"):
            return _ld_langlist(value) or None
        if kind == "langtags":
            return list(value) or None
        if kind == "concept":
            return self.concept(value, path)
        if kind == "concepts":
            return [self.concept(v, f"{path}") for v in value] or None
        if kind == "identifier":
            return value.value
        if kind == "identifiers":
            return [i.value for i in value] or None
        if kind == "contactpoints":
            return [{self.term(cp.kind, path): cp.value} for cp in value] or None
        if kind == "ref":
            return self.ref(value, path)
        if kind == "reflist":
            return [self.ref(r, path) for r in value] or None
        if kind == "relations":
            return [{self.term("relationType", path): rel.type,
                     self.term("relatedLR", path): self.ref(rel.target, path)}
                    for rel in value] or None
        if kind == "sizes":
            return [{self.term("amount", path): s.amount,
                     self.term("sizeUnit", path): self.concept(s.unit, f"{path}.unit")}
                    for s in value] or None
        if kind == "provenance":
            return {self.term("harvestSource", path): value.source_id,
                    self.term("originalIdentifier", path): value.original_id}
        if kind == "object":
            return self.fields(value, spec.sub, path)
        if kind == "objects":
            return [self.fields(item, spec.sub, f"{path}[{i}]")
                    for i, item in enumerate(value)] or None
        raise AssertionError(f"unhandled field kind {kind}")

    def fields(self, item, specs: tuple[F.FieldSpec, ...], path: str) -> dict:
        out: dict = {}
        for spec in specs:
            value = self.value(item, spec, f"{path}.{spec.path}" if path else spec.path)
            if value is not None:
                out[self.term(spec.xml, spec.path)] = value
        return out


def _ld_langlist(items) -> list[dict]:
    return [{"@language": lt.lang, "@value": lt.text} for lt in items]


def emit_jsonld(record: MetadataRecord, bindings: IriBindingTable,
                vocabularies: VocabularySet | None = None,
                inline_context: bool = False) -> str:
    """JSON-LD export: record as subject, concept refs as full IRIs.

    Raises UnboundTerm when a term or concept has no binding; NotCompliant
    when vocabularies are supplied and the record fails validation.
    """
    if vocabularies is not None:
        _gate(record, vocabularies)
    emitter = _LdEmitter(bindings)
    entity = record.entity
    subtype = schema.subtype_of(entity)
    node = emitter.fields(record, F.ENVELOPE_FIELDS, "")
    node["@id"] = record_subject_iri(record)
    node["@type"] = emitter.term("MetadataRecord", "")

    if isinstance(entity, schema.LanguageResource):
        entity_node = emitter.fields(entity, F.LR_COMMON_FIELDS, "entity")
        entity_node.update(emitter.fields(entity, F.LR_SUBTYPE_TABLES[subtype][1],
                                          "entity"))
    else:
        entity_node = emitter.fields(entity, F.entity_fields(subtype), "entity")
    entity_node["@type"] = emitter.term(subtype, "entity")
    node[emitter.term("DescribedEntity", "entity")] = entity_node

    doc = dict(node)
    doc["@context"] = (context_object()["@context"] if inline_context
                       else CONTEXT_FILENAME)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
