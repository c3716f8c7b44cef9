"""Controlled vocabularies: the LT taxonomy and every other concept tree.

Vocabularies are immutable snapshots loaded from a line-oriented stanza
format (grammar in docs/formats.md). A VocabularySet holds the active
snapshots and supports an atomic swap on reload, so readers never block.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from importlib import resources

from .exceptions import CycleError, DanglingBroaderError, ParseError, UnknownConcept
from .schema import LangText, MetadataRecord, LanguageResource, concept_local_name

# Ontology namespaces the concept IRIs live in.
METASHARE_NS = "http://purl.org/net/def/metashare/"
OMTD_NS = "http://w3id.org/meta-share/omtd-share/"

# Vocabulary ids bound by the schema field table.
VOCABULARY_IDS = (
    "lt-taxonomy",
    "domain",
    "media-type",
    "data-format",
    "annotation-type",
    "distribution-form",
    "size-unit",
    "processing-resource-type",
    "lcr-subtype",
    "ld-subtype",
    "basic-unit",
    "encoding-info",
    "condition-of-use",
    "licence",
    "text-genre",
    "audio-genre",
    "text-type",
)


@dataclass(frozen=True)
class TaxonomyConcept:
    iri: str
    pref_labels: tuple[LangText, ...]  # at least one English label
    alt_labels: tuple[LangText, ...] = ()
    definition: str | None = None
    broader: str | None = None
    deprecated: bool = False

    def pref_label(self, lang: str = "en") -> str:
        for lt in self.pref_labels:
            if lt.lang == lang:
                return lt.text
        return self.pref_labels[0].text if self.pref_labels else concept_local_name(self.iri)


@dataclass(frozen=True)
class Vocabulary:
    """Forest of concepts closed under broader, with label lookup."""

    id: str
    concepts: tuple[TaxonomyConcept, ...]
    _by_iri: dict = field(default_factory=dict, compare=False, repr=False)
    _narrower: dict = field(default_factory=dict, compare=False, repr=False)
    _by_label: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        ordered = tuple(sorted(self.concepts, key=lambda c: c.iri))
        object.__setattr__(self, "concepts", ordered)
        by_iri = {c.iri: c for c in ordered}
        narrower: dict[str, list[str]] = {}
        by_label: dict[str, list[str]] = {}
        for c in ordered:
            if c.broader is not None:
                narrower.setdefault(c.broader, []).append(c.iri)
            for lt in c.pref_labels + c.alt_labels:
                by_label.setdefault(lt.text.casefold(), []).append(c.iri)
            by_label.setdefault(concept_local_name(c.iri).casefold(), []).append(c.iri)
        object.__setattr__(self, "_by_iri", by_iri)
        object.__setattr__(self, "_narrower", narrower)
        object.__setattr__(self, "_by_label", {k: sorted(set(v)) for k, v in by_label.items()})

    def __contains__(self, iri: str) -> bool:
        return iri in self._by_iri

    def get(self, iri: str) -> TaxonomyConcept | None:
        return self._by_iri.get(iri)

    def roots(self) -> list[TaxonomyConcept]:
        return [c for c in self.concepts if c.broader is None]

    def narrower(self, iri: str) -> list[str]:
        return list(self._narrower.get(iri, ()))

    def descendants(self, iri: str) -> set[str]:
        """Transitive closure of narrower, including the concept itself."""
        if iri not in self._by_iri:
            raise UnknownConcept(iri)
        seen = {iri}
        stack = [iri]
        while stack:
            for child in self._narrower.get(stack.pop(), ()):
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        return seen

    def ancestors(self, iri: str) -> list[str]:
        """Broader chain from the concept itself up to its root."""
        if iri not in self._by_iri:
            raise UnknownConcept(iri)
        chain = [iri]
        cur = self._by_iri[iri]
        while cur.broader is not None:
            chain.append(cur.broader)
            cur = self._by_iri[cur.broader]
        return chain

    def resolve_label(self, label: str) -> list[str]:
        """Case-insensitive pref/alt label match; IRI-sorted result."""
        return list(self._by_label.get(label.casefold(), ()))

    def all_labels(self) -> set[str]:
        return set(self._by_label.keys())


def _validate(vocab: Vocabulary) -> Vocabulary:
    by_iri = {c.iri: c for c in vocab.concepts}
    for c in vocab.concepts:
        if c.broader is not None and c.broader not in by_iri:
            raise DanglingBroaderError(f"{c.iri}: broader {c.broader} not in vocabulary")
    # cycle check over broader links
    state: dict[str, int] = {}
    for c in vocab.concepts:
        if state.get(c.iri):
            continue
        trail = []
        cur: str | None = c.iri
        while cur is not None and state.get(cur) != 2:
            if state.get(cur) == 1:
                cycle = trail[trail.index(cur):] + [cur]
                raise CycleError(cycle)
            state[cur] = 1
            trail.append(cur)
            cur = by_iri[cur].broader
        for iri in trail:
            state[iri] = 2
    return vocab


_STANZA_KEY = re.compile(r"^(vocabulary|iri|prefLabel@([A-Za-z-]+)|altLabel@([A-Za-z-]+)|broader|definition|deprecated)\s+(.*)$")


def parse_vocabulary(text: str) -> Vocabulary:
    """Parse the stanza format into a validated vocabulary.

    Raises ParseError (with line number), CycleError or
    DanglingBroaderError.
    """
    vocab_id: str | None = None
    concepts: list[TaxonomyConcept] = []
    cur: dict | None = None

    def flush(line_no: int):
        nonlocal cur
        if cur is None:
            return
        if "iri" not in cur:
            raise ParseError("concept stanza without iri", line_no)
        if not cur.get("pref"):
            raise ParseError(f"concept {cur['iri']} has no prefLabel", line_no)
        concepts.append(TaxonomyConcept(
            iri=cur["iri"],
            pref_labels=tuple(cur["pref"]),
            alt_labels=tuple(cur.get("alt", ())),
            definition=cur.get("definition"),
            broader=cur.get("broader"),
            deprecated=cur.get("deprecated", False),
        ))
        cur = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip():
            flush(line_no)
            continue
        if line.lstrip().startswith("#"):
            continue
        m = _STANZA_KEY.match(line.strip())
        if not m:
            raise ParseError(f"unrecognized line {line.strip()!r}", line_no)
        key, pref_lang, alt_lang, value = m.group(1), m.group(2), m.group(3), m.group(4).strip()
        if key == "vocabulary":
            if vocab_id is not None:
                raise ParseError("duplicate vocabulary header", line_no)
            vocab_id = value
            continue
        if cur is None:
            cur = {}
        if key == "iri":
            if "iri" in cur:
                raise ParseError("stanza with two iri lines", line_no)
            cur["iri"] = value
        elif pref_lang is not None:
            cur.setdefault("pref", []).append(LangText(pref_lang, value))
        elif alt_lang is not None:
            cur.setdefault("alt", []).append(LangText(alt_lang, value))
        elif key == "broader":
            cur["broader"] = value
        elif key == "definition":
            cur["definition"] = value
        elif key == "deprecated":
            cur["deprecated"] = value.lower() in ("true", "1", "yes")
    flush(len(text.splitlines()) + 1)

    if vocab_id is None:
        if concepts:
            raise ParseError("missing 'vocabulary <id>' header", 1)
        vocab_id = "empty"
    seen: set[str] = set()
    for c in concepts:
        if c.iri in seen:
            raise ParseError(f"duplicate concept iri {c.iri}", 0)
        seen.add(c.iri)
    return _validate(Vocabulary(id=vocab_id, concepts=tuple(concepts)))


# Spec-facing name.
load_vocabulary = parse_vocabulary


def serialize_vocabulary(vocab: Vocabulary) -> str:
    """Inverse of parse_vocabulary (concepts in IRI order)."""
    lines = [f"vocabulary {vocab.id}", ""]
    for c in vocab.concepts:
        lines.append(f"iri {c.iri}")
        for lt in c.pref_labels:
            lines.append(f"prefLabel@{lt.lang} {lt.text}")
        for lt in c.alt_labels:
            lines.append(f"altLabel@{lt.lang} {lt.text}")
        if c.broader is not None:
            lines.append(f"broader {c.broader}")
        if c.definition is not None:
            lines.append(f"definition {c.definition}")
        if c.deprecated:
            lines.append("deprecated true")
        lines.append("")
    return "\n".join(lines)


class VocabularySet:
    """The active vocabulary snapshots, swap-on-reload.

    Distinct vocabularies must occupy disjoint IRI spaces; the set refuses
    to install overlapping snapshots.
    """

    def __init__(self, vocabularies: dict[str, Vocabulary] | None = None):
        self._lock = threading.Lock()
        self._vocabularies: dict[str, Vocabulary] = {}
        if vocabularies:
            for v in vocabularies.values():
                self.install(v)

    def install(self, vocab: Vocabulary) -> None:
        with self._lock:
            for other_id, other in self._vocabularies.items():
                if other_id == vocab.id:
                    continue
                overlap = {c.iri for c in other.concepts} & {c.iri for c in vocab.concepts}
                if overlap:
                    raise DanglingBroaderError(
                        f"IRI space of {vocab.id} overlaps {other_id}: {sorted(overlap)[0]}")
            snapshot = dict(self._vocabularies)
            snapshot[vocab.id] = vocab
            self._vocabularies = snapshot

    def get(self, vocab_id: str) -> Vocabulary | None:
        return self._vocabularies.get(vocab_id)

    def __getitem__(self, vocab_id: str) -> Vocabulary:
        v = self._vocabularies.get(vocab_id)
        if v is None:
            raise UnknownConcept(f"no vocabulary {vocab_id!r}")
        return v

    def ids(self) -> list[str]:
        return sorted(self._vocabularies)

    def resolve(self, vocab_id: str, iri: str) -> TaxonomyConcept | None:
        v = self._vocabularies.get(vocab_id)
        return v.get(iri) if v is not None else None

    def add_concept(self, vocab_id: str, concept: TaxonomyConcept) -> Vocabulary:
        """Extend a vocabulary with one concept (atomic snapshot swap)."""
        base = self[vocab_id]
        updated = _validate(Vocabulary(id=vocab_id, concepts=base.concepts + (concept,)))
        self.install(updated)
        return updated


# ---------------------------------------------------------------------------
# Keyword promotion


@dataclass(frozen=True)
class PromotionCandidate:
    keyword: str
    occurrence_count: int
    co_occurring: tuple[str, ...] = ()
    status: str = "proposed"


def propose_keywords(records: list[MetadataRecord], min_count: int,
                     taxonomy: Vocabulary) -> list[PromotionCandidate]:
    """Keywords frequent enough to be taxonomy candidates.

    One candidate per case-folded keyword that appears in at least
    ``min_count`` distinct records and matches no existing taxonomy label.
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    per_keyword: dict[str, set[int]] = {}
    co: dict[str, set[str]] = {}
    for idx, record in enumerate(records):
        entity = record.entity
        if not isinstance(entity, LanguageResource):
            continue
        concepts = set(getattr(entity, "functions", ()) or ())
        concepts.update(entity.domains)
        for kw in entity.keywords:
            folded = kw.text.casefold()
            per_keyword.setdefault(folded, set()).add(idx)
            co.setdefault(folded, set()).update(concepts)
    labels = taxonomy.all_labels()
    out = []
    for keyword in sorted(per_keyword):
        count = len(per_keyword[keyword])
        if count < min_count or keyword in labels:
            continue
        out.append(PromotionCandidate(
            keyword=keyword,
            occurrence_count=count,
            co_occurring=tuple(sorted(co.get(keyword, ()))),
        ))
    return out


def accept_candidate(vocabularies: VocabularySet, keyword: str,
                     pref_label: str | None = None,
                     broader: str | None = None) -> TaxonomyConcept:
    """Admin action: turn a keyword candidate into an LT taxonomy concept."""
    taxonomy = vocabularies["lt-taxonomy"]
    label = pref_label or keyword
    local = re.sub(r"[^0-9A-Za-z]+", "", label.title())
    iri = OMTD_NS + local
    if iri in taxonomy:
        raise ValueError(f"concept {iri} already exists")
    if broader is None:
        roots = taxonomy.roots()
        broader = roots[0].iri if roots else None
    concept = TaxonomyConcept(iri=iri, pref_labels=(LangText("en", label),),
                              alt_labels=(LangText("en", keyword),), broader=broader)
    vocabularies.add_concept("lt-taxonomy", concept)
    return concept


# ---------------------------------------------------------------------------
# Seed vocabularies (package data)


def load_seed_vocabularies(extra_dir=None) -> VocabularySet:
    """Load the shipped vocabularies, then any overlay files in extra_dir."""
    vs = VocabularySet()
    root = resources.files("ltcat").joinpath("data/vocabularies")
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".vocab"):
            vs.install(parse_vocabulary(entry.read_text(encoding="utf-8")))
    if extra_dir is not None:
        from pathlib import Path
        for path in sorted(Path(extra_dir).glob("*.vocab")):
            overlay = parse_vocabulary(path.read_text(encoding="utf-8"))
            base = vs.get(overlay.id)
            if base is None:
                vs.install(overlay)
            else:
                merged = {c.iri: c for c in base.concepts}
                merged.update({c.iri: c for c in overlay.concepts})
                vs.install(_validate(Vocabulary(id=overlay.id, concepts=tuple(merged.values()))))
    return vs


def descendants(vocab: Vocabulary, iri: str) -> set[str]:
    return vocab.descendants(iri)


def resolve_label(vocab: Vocabulary, label: str) -> list[str]:
    return vocab.resolve_label(label)
