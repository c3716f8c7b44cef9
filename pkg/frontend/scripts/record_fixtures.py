#!/usr/bin/env python3
"""Record frontend test fixtures from the live API.

Drives the real service in-process and captures: 20 scripted editor
sessions (registry + payload + the dry-run validation report the API
returned) and 20 faceted search queries (query + verbatim response body).
Rerun after schema or search changes:

    python frontend/scripts/record_fixtures.py
"""

import copy
import json
import pathlib
import random
import sys

ROOT = pathlib.Path(__file__).resolve().parents[2]
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tests"))

from fastapi.testclient import TestClient  # noqa: E402

from ltcat.api import ApiState, create_app  # noqa: E402
from ltcat.config import Config, TokenInfo  # noqa: E402
from ltcat.harvest import Harvester  # noqa: E402
from ltcat.search import SearchIndex  # noqa: E402
from ltcat.serialization import record_to_json_obj  # noqa: E402
from ltcat.store import Store  # noqa: E402
from ltcat.vocab import OMTD_NS, load_seed_vocabularies  # noqa: E402

import generators  # noqa: E402

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def make_client(tmp_dir: pathlib.Path) -> TestClient:
    config = Config(data_dir=str(tmp_dir),
                    tokens={"t": TokenInfo(role="admin", name="recorder")})
    vocabularies = load_seed_vocabularies()
    store = Store(config.data_dir, vocabularies=vocabularies)
    index = SearchIndex(vocabularies)
    index.attach(store)
    harvester = Harvester(store, vocabularies)
    return TestClient(create_app(state=ApiState(config, vocabularies, store,
                                                index, harvester)))


def drop(obj: dict, *chain):
    node = obj
    for step in chain[:-1]:
        node = node[step]
    node.pop(chain[-1], None)
    return obj


LR = ("MetadataRecord", "DescribedEntity", "LanguageResource")


def editor_sessions(client: TestClient) -> list[dict]:
    rng = random.Random(20250401)
    sessions = []

    def payload_for(kind: str) -> dict:
        return record_to_json_obj(generators.record(rng, kind))

    def mutate(name: str, kind: str, fn) -> None:
        payload = payload_for(kind)
        fn(payload)
        sessions.append({"name": name, "subtype": kind, "payload": payload})

    # valid sessions across every kind
    for kind in ("ToolService", "Corpus", "LexicalConceptualResource",
                 "LanguageDescription", "Organization", "Person", "Project",
                 "Document", "LicenceTerms"):
        mutate(f"valid-{kind}", kind, lambda p: p)

    sub = lambda p, *rest: (*LR, "LRSubclass", *rest)  # noqa: E731

    mutate("missing-name", "ToolService",
           lambda p: drop(p, *LR, "resourceName"))
    mutate("missing-functions", "ToolService",
           lambda p: drop(p, *LR, "LRSubclass", "ToolService", "function"))
    mutate("missing-description", "Corpus",
           lambda p: drop(p, *LR, "description"))
    mutate("missing-provider", "LexicalConceptualResource",
           lambda p: drop(p, *LR, "resourceProvider"))
    mutate("missing-distributions", "Corpus",
           lambda p: drop(p, *LR, "LRSubclass", "Corpus", "DataDistribution"))

    def bad_language(p):
        spec = p["MetadataRecord"]["DescribedEntity"]["LanguageResource"][
            "LRSubclass"]["ToolService"]["inputContentResource"][0]
        spec["languageTag"] = ["e n"]
    mutate("bad-language-tag", "ToolService", bad_language)

    def bad_concept(p):
        tool = p["MetadataRecord"]["DescribedEntity"]["LanguageResource"][
            "LRSubclass"]["ToolService"]
        tool["function"] = ["ms:NotAThing"]
    mutate("unresolved-concept", "ToolService", bad_concept)

    def unknown_field(p):
        p["MetadataRecord"]["DescribedEntity"]["LanguageResource"][
            "vendorRating"] = "5 stars"
    mutate("unknown-field", "Corpus", unknown_field)

    def nested_media(p):
        part = p["MetadataRecord"]["DescribedEntity"]["LanguageResource"][
            "LRSubclass"]["Corpus"]["MediaPart"][0]
        part.pop("mediaType", None)
    mutate("missing-media-type", "Corpus", nested_media)

    def missing_licence(p):
        dist = p["MetadataRecord"]["DescribedEntity"]["LanguageResource"][
            "LRSubclass"]["Corpus"]["DataDistribution"][0]
        dist.pop("LicenceTerms", None)
    mutate("missing-licence", "Corpus", missing_licence)

    mutate("missing-surname", "Person",
           lambda p: drop(p, "MetadataRecord", "DescribedEntity", "Person",
                          "surname"))

    assert len(sessions) == 20, len(sessions)

    registries: dict[str, dict] = {}
    out = []
    for session in sessions:
        kind = session["subtype"]
        if kind not in registries:
            registries[kind] = client.get(f"/schema/registry/{kind}").json()
        response = client.post("/records:validate", json=session["payload"])
        assert response.status_code == 200, response.text
        out.append({
            "name": session["name"],
            "subtype": kind,
            "payload": session["payload"],
            "report": response.json(),
        })
    return [{"registries": registries, "sessions": out}][0]


def facet_queries(client: TestClient) -> dict:
    rng = random.Random(20250402)
    for _ in range(80):
        record = generators.record(rng)
        response = client.post("/records", json=record_to_json_obj(record),
                               headers={"Authorization": "Bearer t"})
        assert response.status_code == 201, response.text

    queries = []
    areas = [OMTD_NS + n for n in (
        "Annotation", "TextProcessing", "NamedEntityRecognition",
        "MachineTranslation", "SpeechProcessing", "LanguageTechnology")]
    for i in range(20):
        params = []
        if rng.random() < 0.5:
            params.append(("q", rng.choice(["tool", "corpus", "lexicon",
                                            rng.choice(generators.WORDS)])))
        if rng.random() < 0.6:
            params.append(("facet.language", rng.choice(generators.LANGS)))
        if rng.random() < 0.5:
            params.append(("facet.ltArea", rng.choice(areas)))
        if rng.random() < 0.3:
            params.append(("facet.lrType", rng.choice(
                ["toolService", "corpus", "lexicalConceptualResource"])))
        response = client.get("/search", params=params)
        assert response.status_code == 200
        queries.append({
            "name": f"query-{i:02d}",
            "params": params,
            "rawBody": response.text,
        })
    taxonomy = client.get("/taxonomy").json()
    return {"queries": queries, "taxonomy": taxonomy}


def main() -> None:
    import tempfile
    OUT.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        client = make_client(pathlib.Path(tmp) / "data")
        sessions = editor_sessions(client)
        (OUT / "editor_sessions.json").write_text(
            json.dumps(sessions, indent=2, sort_keys=True) + "\n")
        queries = facet_queries(client)
        (OUT / "facet_queries.json").write_text(
            json.dumps(queries, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT / 'editor_sessions.json'}")
    print(f"wrote {OUT / 'facet_queries.json'}")


if __name__ == "__main__":
    main()
