"""ltcat: registry, library and CLI for ELG-SHARE language-resource metadata."""

from .schema import (
    Corpus, DataDistribution, Document, Identifier, IOSpec, LangText,
    LanguageDescription, LanguageResource, LexicalConceptualResource,
    LicenceTerms, LRStub, MediaPart, MetadataRecord, ModelDetails,
    Organization, Person, Project, Provenance, Ref, Relation, Size,
    SoftwareDistribution, ToolService, new_record, resolve_relations,
    structural_violations,
)
from .fields import field_registry
from .validation import Finding, ValidationReport, validate_import, validate_minimal
from .serialization import (
    emit_json, emit_jsonld, emit_xml, parse_json, parse_xml,
)
from .vocab import (
    PromotionCandidate, TaxonomyConcept, Vocabulary, VocabularySet,
    load_seed_vocabularies, load_vocabulary, propose_keywords,
)

__version__ = "0.1.0"

__all__ = [
    "Corpus", "DataDistribution", "Document", "Identifier", "IOSpec",
    "LangText", "LanguageDescription", "LanguageResource",
    "LexicalConceptualResource", "LicenceTerms", "LRStub", "MediaPart",
    "MetadataRecord", "ModelDetails", "Organization", "Person", "Project",
    "Provenance", "Ref", "Relation", "Size", "SoftwareDistribution",
    "ToolService", "new_record", "resolve_relations", "structural_violations",
    "field_registry", "Finding", "ValidationReport", "validate_import",
    "validate_minimal", "emit_json", "emit_jsonld", "emit_xml", "parse_json",
    "parse_xml", "PromotionCandidate", "TaxonomyConcept", "Vocabulary",
    "VocabularySet", "load_seed_vocabularies", "load_vocabulary",
    "propose_keywords",
]
