"""Seeded generator of valid records across every entity kind.

Deterministic given the Random instance; used by the round-trip, search,
matcher and acceptance suites.
"""

from __future__ import annotations

import datetime as dt
import random

from ltcat.schema import (
    ContactPoint, Corpus, DataDistribution, Document, Identifier, IOSpec,
    LangText, LanguageDescription, LexicalConceptualResource, LicenceTerms,
    MediaPart, MetadataRecord, ModelDetails, Organization, Person, Project,
    Ref, Relation, Size, SoftwareDistribution, ToolService,
)
from ltcat.vocab import METASHARE_NS, OMTD_NS

MS = METASHARE_NS
OMTD = OMTD_NS

LANGS = ["en", "de", "fr", "es", "el", "fi", "pt", "it", "en-GB", "nl"]
FUNCTIONS = [OMTD + n for n in (
    "NamedEntityRecognition", "PosTagging", "Tokenization", "Lemmatization",
    "SentimentAnalysis", "MachineTranslation", "SpeechRecognition",
    "SpeechSynthesis", "InformationExtraction", "Visualization")]
DOMAINS = [MS + n for n in ("General", "Law", "Health", "Finance", "News", "Science")]
TEXT_FORMATS = [MS + n for n in ("Text", "PlainText", "Html", "Pdf", "Csv",
                                 "Json", "Xml", "Tmx", "Conllu")]
AUDIO_FORMATS = [MS + n for n in ("Wav", "Mp3")]
ANNOTATIONS = [MS + n for n in ("NamedEntity", "Date", "Organization", "Person",
                                "Location", "PosTag", "Lemma", "Sentiment")]
SW_FORMS = [MS + n for n in ("dockerImage", "webService", "executable", "sourceCode")]
DATA_FORMS = [MS + n for n in ("downloadableFile", "userInterface")]
TEXT_UNITS = [MS + n for n in ("sentences", "tokens", "words", "documents")]
LCR_SUBTYPES = [MS + n for n in ("ontology", "lexicon", "termGlossary",
                                 "wordList", "thesaurus")]
BASIC_UNITS = [MS + n for n in ("lemma", "concept", "term", "word")]
ENCODINGS = [MS + n for n in ("partOfSpeechTags", "senses", "translationEquivalents")]
LD_SUBTYPES = [MS + n for n in ("grammar", "model", "other")]
TEXT_GENRES = [MS + n for n in ("news", "fiction", "legal", "scientific")]
LICENCES = ["CC-BY-4.0", "Apache-2.0", "MIT", "LGPL-3.0-only", "CC0-1.0"]
WORDS = ["alpha", "breeze", "cobalt", "delta", "ember", "fjord", "glade",
         "harbor", "iris", "juniper", "krill", "lumen", "marble", "nova",
         "onyx", "pike", "quartz", "reef", "sable", "tundra"]

_SERIAL = [0]


def _name(rng: random.Random) -> str:
    return " ".join(rng.sample(WORDS, 3)).title()


def _langtexts(rng: random.Random, text: str, n_langs: int = 1) -> tuple:
    langs = rng.sample(LANGS[:6], n_langs)
    return tuple(LangText(lang, f"{text} ({lang})") for lang in langs)


def person(rng: random.Random) -> Person:
    return Person(surnames=(LangText("en", rng.choice(WORDS).title()),),
                  given_names=(LangText("en", rng.choice(WORDS).title()),),
                  email=f"{rng.choice(WORDS)}@example.org")


def organization(rng: random.Random) -> Organization:
    return Organization(names=(LangText("en", f"{_name(rng)} Institute"),),
                        website="https://example.org/org",
                        lt_areas=tuple(rng.sample(FUNCTIONS, 1)))


def licence_ref(rng: random.Random) -> Ref:
    name = rng.choice(LICENCES)
    return Ref(stub=LicenceTerms(
        names=(LangText("en", name),),
        access_url=f"https://licences.example.org/{name}"))


def _common(rng: random.Random, prefix: str) -> dict:
    name = f"{prefix} {_name(rng)}"
    return dict(
        names=_langtexts(rng, name, rng.randint(1, 2)),
        short_names=(LangText("en", name.split()[1]),) if rng.random() < 0.5 else (),
        descriptions=_langtexts(rng, f"Description of {name}", 1),
        version=rng.choice(["1.0.0", "2.1", "0.9", "8.6"]),
        additional_info=(ContactPoint("landingPage",
                                      f"https://example.org/{rng.choice(WORDS)}"),),
        contacts=(Ref(stub=person(rng)),),
        keywords=tuple(LangText("en", w) for w in rng.sample(WORDS, rng.randint(1, 3))),
        domains=tuple(rng.sample(DOMAINS, rng.randint(1, 2))),
        resource_provider=Ref(stub=organization(rng)),
        related_docs=(Ref(stub=Document(
            titles=(LangText("en", f"Manual for {name}"),),
            year=rng.randint(2005, 2024))),),
    )


def io_spec(rng: random.Random, langs, output: bool = False) -> IOSpec:
    formats = tuple(rng.sample(TEXT_FORMATS, rng.randint(1, 3)))
    return IOSpec(
        processing_resource_type=MS + "file",
        languages=tuple(langs),
        media_type=MS + "text",
        data_formats=formats,
        annotation_types=tuple(rng.sample(ANNOTATIONS, rng.randint(1, 3)))
        if output else (),
    )


def tool(rng: random.Random) -> ToolService:
    langs = rng.sample(LANGS, rng.randint(1, 3))
    functional = rng.random() < 0.3
    return ToolService(
        **_common(rng, "Tool"),
        functions=tuple(rng.sample(FUNCTIONS, rng.randint(1, 2))),
        language_dependent=True,
        hw_sw_requirements="none" if rng.random() < 0.3 else None,
        input_specs=(io_spec(rng, langs),),
        output_specs=(io_spec(rng, langs, output=True),),
        is_functional_service=functional,
        docker_download_location="https://registry.example.org/img" if functional else None,
        execution_endpoint="https://api.example.org/process" if functional else None,
        distributions=(SoftwareDistribution(
            form=rng.choice(SW_FORMS),
            download_location="https://downloads.example.org/tool.tgz",
            digest="sha256:" + "".join(rng.choices("0123456789abcdef", k=12)),
            licences=(licence_ref(rng),)),),
    )


def media_part(rng: random.Random, langs) -> MediaPart:
    return MediaPart(
        media_type=MS + "text",
        languages=tuple(langs),
        sizes=(Size(amount=rng.randint(100, 2_000_000),
                    unit=rng.choice(TEXT_UNITS)),))


def data_distribution(rng: random.Random) -> DataDistribution:
    return DataDistribution(
        form=rng.choice(DATA_FORMS),
        access_location=f"https://data.example.org/{rng.choice(WORDS)}",
        data_formats=tuple(rng.sample(TEXT_FORMATS, rng.randint(1, 2))),
        sizes=(Size(amount=rng.randint(1, 500) * 1024, unit=MS + "bytes"),)
        if rng.random() < 0.5 else (),
        licences=(licence_ref(rng),))


def corpus(rng: random.Random) -> Corpus:
    langs = rng.sample(LANGS, rng.randint(1, 3))
    annotated = rng.random() < 0.5
    return Corpus(
        **_common(rng, "Corpus"),
        is_annotated=annotated,
        annotation_types=tuple(rng.sample(ANNOTATIONS, 2)) if annotated else (),
        raw_version=Ref(stub=_lr_stub(rng)) if annotated else None,
        text_genres=tuple(rng.sample(TEXT_GENRES, 1)),
        media_parts=tuple(media_part(rng, langs)
                          for _ in range(rng.randint(1, 2))),
        distributions=tuple(data_distribution(rng)
                            for _ in range(rng.randint(1, 2))),
    )


def _lr_stub(rng: random.Random):
    from ltcat.schema import LRStub
    return LRStub(names=(LangText("en", f"Raw {_name(rng)}"),))


def lexical(rng: random.Random) -> LexicalConceptualResource:
    langs = rng.sample(LANGS, rng.randint(1, 2))
    return LexicalConceptualResource(
        **_common(rng, "Lexicon"),
        lcr_subtype=rng.choice(LCR_SUBTYPES),
        meta_languages=tuple(langs),
        basic_unit=rng.choice(BASIC_UNITS),
        encoding_info=tuple(rng.sample(ENCODINGS, rng.randint(1, 2))),
        media_parts=(media_part(rng, langs),),
        distributions=(data_distribution(rng),),
    )


def language_description(rng: random.Random) -> LanguageDescription:
    langs = rng.sample(LANGS, rng.randint(1, 2))
    subtype = rng.choice(LD_SUBTYPES)
    is_model = subtype.endswith("/model")
    return LanguageDescription(
        **_common(rng, "Model"),
        ld_subtype=subtype,
        meta_languages=tuple(langs),
        encoding_info=tuple(rng.sample(ENCODINGS, 1)),
        model_details=ModelDetails(
            training_corpus=Ref(stub=_lr_stub(rng)),
            framework=rng.choice(["pytorch", "tensorflow", "spark-nlp"]))
        if is_model else None,
        media_parts=(media_part(rng, langs),),
        distributions=(data_distribution(rng),),
    )


def project(rng: random.Random) -> Project:
    return Project(titles=(LangText("en", f"Project {_name(rng)}"),),
                   grant_id=f"GA-{rng.randint(100000, 999999)}",
                   funder=Ref(stub=organization(rng)),
                   website="https://example.org/project",
                   lt_areas=tuple(rng.sample(FUNCTIONS, 1)))


def document(rng: random.Random) -> Document:
    return Document(titles=(LangText("en", f"Paper on {_name(rng)}"),),
                    authors=(rng.choice(WORDS).title(),),
                    identifiers=(Identifier("doi", f"10.9999/{rng.randint(1000, 9999)}"),),
                    year=rng.randint(2000, 2024))


def licence_terms(rng: random.Random) -> LicenceTerms:
    name = rng.choice(LICENCES)
    return LicenceTerms(names=(LangText("en", name),),
                        identifiers=(Identifier("spdx", name),),
                        conditions_of_use=(MS + "attribution",))


GENERATORS = {
    "ToolService": tool,
    "Corpus": corpus,
    "LexicalConceptualResource": lexical,
    "LanguageDescription": language_description,
    "Organization": organization,
    "Person": person,
    "Project": project,
    "Document": document,
    "LicenceTerms": licence_terms,
}

LR_KINDS = ("ToolService", "Corpus", "LexicalConceptualResource",
            "LanguageDescription")


def record(rng: random.Random, kind: str | None = None,
           with_id: bool = False) -> MetadataRecord:
    """One valid record; kind picked at random when not given."""
    if kind is None:
        kind = rng.choice(list(GENERATORS))
    entity = GENERATORS[kind](rng)
    created = dt.date(2019, 1, 1) + dt.timedelta(days=rng.randint(0, 1500))
    updated = created + dt.timedelta(days=rng.randint(0, 300))
    record_id = None
    if with_id:
        _SERIAL[0] += 1
        record_id = Identifier(
            "elg", f"ELG_MDR_GEN_{created.strftime('%d%m%y')}_{_SERIAL[0]:08d}")
    return MetadataRecord(
        record_id=record_id,
        creation_date=created,
        last_updated=updated,
        curator=Ref(stub=person(rng)),
        curation_status=rng.choice(["claimed", "curated", "validated"]),
        entity=entity,
    )


def records(seed: int, count: int, kinds=None) -> list[MetadataRecord]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        kind = rng.choice(list(kinds)) if kinds else None
        out.append(record(rng, kind))
    return out
