"""Raw record trees: the common shape both the XML and JSON parsers
produce and both emitters consume.

A RawNode keeps local element names (namespace prefix stripped); the
XML layer owns prefixes and the JSON layer owns the key mapping.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field as dc_field

from . import fields as F
from . import schema
from .exceptions import XmlSyntaxError
from .schema import (
    ContactPoint, Extra, Identifier, LangText, LRStub, MetadataRecord,
    Provenance, Ref, Relation, Size, concept_local_name,
)

# XML namespace the ms: prefix binds to.
MS_NAMESPACE = "http://purl.org/net/def/metashare/"
XML_NS = "http://www.w3.org/XML/1998/namespace"


@dataclass
class RawNode:
    name: str
    attrs: dict[str, str] = dc_field(default_factory=dict)
    text: str | None = None
    children: list["RawNode"] = dc_field(default_factory=list)

    def child(self, name: str) -> "RawNode | None":
        for c in self.children:
            if c.name == name:
                return c
        return None

    def all(self, name: str) -> list["RawNode"]:
        return [c for c in self.children if c.name == name]

    def scalar(self) -> str:
        return (self.text or "").strip()


def _strip(tag: str) -> str:
    if tag.startswith("{"):
        tag = tag.split("}", 1)[1]
    if ":" in tag:
        tag = tag.split(":", 1)[1]
    return tag


def _from_et(elem: ET.Element) -> RawNode:
    attrs = {}
    for k, v in elem.attrib.items():
        if k.startswith("{%s}" % XML_NS):
            attrs[_strip(k)] = v
        else:
            attrs[_strip(k)] = v
    return RawNode(
        name=_strip(elem.tag),
        attrs=attrs,
        text=elem.text,
        children=[_from_et(c) for c in elem],
    )


_XMLDECL = re.compile(r"^\s*(<\?xml[^>]*\?>\s*)?(<!--.*?-->\s*)*", re.DOTALL)
_TAG_PREFIX = re.compile(r"</?([A-Za-z_][\w.-]*):")


def root_namespace(text: str) -> str | None:
    """Namespace the ms: prefix is bound to in the document head, if any."""
    m = re.search(r'xmlns:ms\s*=\s*"([^"]*)"', text[:2000])
    return m.group(1) if m else None


def parse_xml_tree(text: str) -> RawNode:
    """Parse arbitrary XML into a RawNode tree.

    Records in the wild often omit the xmlns declarations (the dialect
    fixes them); missing bindings are injected before parsing so the
    conventional prefixes still work.
    """
    try:
        return _from_et(ET.fromstring(text))
    except ET.ParseError as exc:
        if "unbound prefix" not in str(exc):
            raise XmlSyntaxError(str(exc), getattr(exc, "position", None))
        m = _XMLDECL.match(text)
        rest = text[m.end():]
        tag_end = rest.find(">")
        if tag_end == -1:
            raise XmlSyntaxError(str(exc), getattr(exc, "position", None))
        head = rest[:tag_end]
        prefixes = set(_TAG_PREFIX.findall(rest)) | {"ms"}
        prefixes.discard("xml")
        decls = ""
        for prefix in sorted(prefixes):
            if f"xmlns:{prefix}" not in head:
                ns = MS_NAMESPACE if prefix == "ms" else f"urn:prefix:{prefix}"
                decls += f' xmlns:{prefix}="{ns}"'
        insert = head.rstrip()
        if insert.endswith("/"):
            patched = insert[:-1] + decls + "/"
        else:
            patched = insert + decls
        try:
            return _from_et(ET.fromstring(text[:m.end()] + patched + rest[tag_end:]))
        except ET.ParseError as exc2:
            raise XmlSyntaxError(str(exc2), getattr(exc2, "position", None))


# ---------------------------------------------------------------------------
# record -> canonical tree


def _scalar(name: str, text: str, attrs: dict | None = None) -> RawNode:
    return RawNode(name=name, attrs=attrs or {}, text=text)


def _concept_token(iri: str, spec: F.FieldSpec) -> str:
    local = concept_local_name(iri)
    return f"ms:{local}" if spec.curie else local


def _bool_text(value: bool) -> str:
    return "true" if value else "false"


def _amount_text(amount: float) -> str:
    if float(amount).is_integer():
        return str(int(amount))
    return repr(float(amount))


def _identifier_node(spec: F.FieldSpec, ident: Identifier) -> RawNode:
    attrs = {}
    if spec.scheme_attr:
        attrs[spec.scheme_attr] = f"ms:{ident.scheme}"
    return _scalar(spec.xml, ident.value, attrs)


def _stub_nodes(stub) -> list[RawNode]:
    """Inline entity body for a ref stub."""
    if isinstance(stub, LRStub):
        return [_scalar("resourceName", lt.text, {"lang": lt.lang}) for lt in stub.names]
    subtype = type(stub).__name__
    specs = F.SATELLITE_TABLES.get(subtype)
    if specs is None:
        raise ValueError(f"cannot inline a {subtype} stub")
    return _emit_fields(stub, specs[0], path="")


def _ref_content(ref: Ref) -> list[RawNode]:
    out: list[RawNode] = []
    if ref.record_id is not None:
        out.append(_scalar("RecordReference", ref.record_id))
    if ref.stub is not None:
        out.extend(_stub_nodes(ref.stub))
    return out


def _ref_node(spec: F.FieldSpec, ref: Ref) -> RawNode:
    node = RawNode(name=spec.xml)
    if spec.inline_body:
        node.children.extend(_ref_content(ref))
    else:
        if ref.record_id is not None:
            node.children.append(_scalar("RecordReference", ref.record_id))
        if ref.stub is not None:
            if isinstance(ref.stub, LRStub):
                wrapper = RawNode(name="LanguageResource")
            else:
                wrapper = RawNode(name=type(ref.stub).__name__)
            wrapper.children.extend(_stub_nodes(ref.stub))
            node.children.append(wrapper)
    return node


def _size_node(size: Size) -> RawNode:
    return RawNode(name="size", children=[
        _scalar("amount", _amount_text(size.amount)),
        _scalar("sizeUnit", f"ms:{concept_local_name(size.unit)}"),
    ])


def _emit_field(obj, spec: F.FieldSpec, path: str,
                extras: tuple[Extra, ...] = ()) -> list[RawNode]:
    value = getattr(obj, spec.attr)
    kind = spec.kind
    if kind in ("text", "int", "number"):
        if value is None:
            return []
        return [_scalar(spec.xml, str(value))]
    if kind == "textlist":
        return [_scalar(spec.xml, str(v)) for v in value]
    if kind == "bool":
        if value is None:
            return []
        return [_scalar(spec.xml, _bool_text(value))]
    if kind == "date":
        if value is None:
            return []
        return [_scalar(spec.xml, value.isoformat())]
    if kind == "fixed":
        return [_scalar(spec.xml, f"ms:{value}")]
    if kind == "status":
        return [_scalar(spec.xml, value)]
    if kind in ("langmap", "langlist"):
        return [_scalar(spec.xml, lt.text, {"lang": lt.lang}) for lt in value]
    if kind == "langtags":
        return [_scalar(spec.xml, tag) for tag in value]
    if kind == "concept":
        if value is None:
            return []
        return [_scalar(spec.xml, _concept_token(value, spec))]
    if kind == "concepts":
        return [_scalar(spec.xml, _concept_token(iri, spec)) for iri in value]
    if kind == "identifier":
        if value is None:
            return []
        return [_identifier_node(spec, value)]
    if kind == "identifiers":
        return [_identifier_node(spec, ident) for ident in value]
    if kind == "contactpoints":
        return [RawNode(name=spec.xml, children=[_scalar(cp.kind, cp.value)])
                for cp in value]
    if kind == "ref":
        if value is None:
            return []
        return [_ref_node(spec, value)]
    if kind == "reflist":
        return [_ref_node(spec, ref) for ref in value]
    if kind == "relations":
        target_spec = F.FieldSpec(attr="", path="", xml="relatedLR", kind="ref",
                                  ref_kinds=("LR",))
        out = []
        for rel in value:
            node = RawNode(name=spec.xml, children=[_scalar("relationType", rel.type)])
            node.children.append(_ref_node(target_spec, rel.target))
            out.append(node)
        return out
    if kind == "sizes":
        return [_size_node(s) for s in value]
    if kind == "provenance":
        if value is None:
            return []
        children = [
            _scalar("harvestSource", value.source_id),
            _scalar("originalIdentifier", value.original_id),
        ]
        if value.harvest_date is not None:
            children.append(_scalar("harvestDate", value.harvest_date.isoformat()))
        return [RawNode(name=spec.xml, children=children)]
    if kind == "object":
        if value is None:
            return []
        level = f"{path}{spec.path}"
        node = RawNode(name=spec.xml,
                       children=_emit_fields(value, spec.sub, f"{level}.", extras, level))
        return [node]
    if kind == "objects":
        out = []
        for i, item in enumerate(value):
            level = f"{path}{spec.path}[{i}]"
            out.append(RawNode(name=spec.xml,
                               children=_emit_fields(item, spec.sub, f"{level}.",
                                                     extras, level)))
        return out
    raise AssertionError(f"unhandled field kind {kind}")


def _emit_fields(obj, specs: tuple[F.FieldSpec, ...], path: str,
                 extras: tuple[Extra, ...] = (),
                 append_level: str | None = None) -> list[RawNode]:
    out: list[RawNode] = []
    for spec in specs:
        out.extend(_emit_field(obj, spec, path, extras))
    if append_level is not None:
        for extra in extras:
            if extra.path == append_level:
                out.append(extra.node)
    return out


def record_to_tree(record: MetadataRecord) -> RawNode:
    """Canonical tree for a record: fixed element order, extras re-emitted
    after the known siblings of their level.

    Extras path convention: "" for the envelope, "entity" for the entity
    wrapper body, "entity.LRSubclass" for the concrete LR subtype wrapper,
    "entity.<container>[i]" for nested objects.
    """
    entity = record.entity
    subtype = schema.subtype_of(entity)
    root = RawNode(name="MetadataRecord")
    root.children.extend(_emit_fields(record, F.ENVELOPE_FIELDS, "", record.extras, ""))

    described = RawNode(name="DescribedEntity")
    if isinstance(entity, schema.LanguageResource):
        lr = RawNode(name="LanguageResource")
        lr.children.append(_scalar("entityType", "languageResource"))
        lr.children.extend(_emit_fields(entity, F.LR_COMMON_FIELDS, "entity.",
                                        record.extras, "entity"))
        kind_token, specs, _cls = F.LR_SUBTYPE_TABLES[subtype]
        sub = RawNode(name=subtype)
        sub.children.append(_scalar("lrType", kind_token))
        sub.children.extend(_emit_fields(entity, specs, "entity.",
                                         record.extras, "entity.LRSubclass"))
        lr.children.append(RawNode(name="LRSubclass", children=[sub]))
        described.children.append(lr)
    else:
        body = RawNode(name=subtype)
        body.children.extend(_emit_fields(entity, F.entity_fields(subtype), "entity.",
                                          record.extras, "entity"))
        described.children.append(body)
    root.children.append(described)
    return root
