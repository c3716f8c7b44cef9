"""REST surface over the catalogue: records, validation, search, taxonomy,
matching, exports and harvesting control.

Every non-2xx response body has the ApiError shape
``{"status", "code", "message", "findings"?}``. Roles: anonymous reads,
contributors write their own records, admins do everything; tokens come
from the config file as ``Authorization: Bearer <token>``.
"""

from __future__ import annotations

import json
import urllib.parse

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import fields as F
from .config import Config
from .exceptions import (
    BadDimension, BadPage, ConflictingUpdate, IllegalTransition,
    JsonSyntaxError, LtcatError, NamespaceError, NotADataResource,
    NotCompliant, NotFound, SourceUnavailable, UnknownConcept, UnknownFacet,
    UnknownSource, UnknownSubtype, WrongRootError, WrongShapeError,
    XmlSyntaxError,
)
from .crosswalks import to_dcat, to_schema_org
from .harvest import Harvester
from .matcher import candidates, compose
from .schema import SUBTYPES
from .search import SearchIndex, SearchQuery
from .serialization import (
    default_bindings, emit_json, emit_jsonld, emit_xml, json_obj_to_tree,
    parse_xml,
)
from .store import Store
from .validation import validate_tree
from .vocab import VocabularySet, accept_candidate, propose_keywords


def _error(status: int, code: str, message: str, findings=None) -> JSONResponse:
    body = {"status": status, "code": code, "message": message}
    if findings is not None:
        body["findings"] = findings
    return JSONResponse(status_code=status, content=body)


_ERROR_MAP = [
    (NotFound, 404, "NOT_FOUND"),
    (ConflictingUpdate, 409, "CONFLICTING_UPDATE"),
    (IllegalTransition, 409, "ILLEGAL_TRANSITION"),
    (NotADataResource, 400, "NOT_A_DATA_RESOURCE"),
    (UnknownFacet, 400, "UNKNOWN_FACET"),
    (BadPage, 400, "BAD_PAGE"),
    (BadDimension, 400, "BAD_DIMENSION"),
    (UnknownSubtype, 404, "UNKNOWN_SUBTYPE"),
    (UnknownConcept, 404, "UNKNOWN_CONCEPT"),
    (UnknownSource, 404, "UNKNOWN_SOURCE"),
    (SourceUnavailable, 502, "SOURCE_UNAVAILABLE"),
    (XmlSyntaxError, 400, "XML_SYNTAX"),
    (JsonSyntaxError, 400, "JSON_SYNTAX"),
    (WrongRootError, 400, "WRONG_ROOT"),
    (WrongShapeError, 400, "WRONG_SHAPE"),
    (NamespaceError, 400, "NAMESPACE"),
]


class ApiState:
    def __init__(self, config: Config, vocabularies: VocabularySet,
                 store: Store, index: SearchIndex, harvester: Harvester):
        self.config = config
        self.vocabularies = vocabularies
        self.store = store
        self.index = index
        self.harvester = harvester


def build_state(config: Config) -> ApiState:
    from .vocab import load_seed_vocabularies
    vocabularies = load_seed_vocabularies(config.vocabulary_dir)
    store = Store(config.data_dir, vocabularies=vocabularies,
                  source_code=config.source_code)
    index = SearchIndex(vocabularies)
    index.attach(store)
    harvester = Harvester(store, vocabularies, sources=list(config.sources))
    return ApiState(config, vocabularies, store, index, harvester)


def create_app(config: Config | None = None, state: ApiState | None = None,
               transport=None) -> FastAPI:
    if state is None:
        state = build_state(config or Config())
    if transport is not None:
        state.harvester.transport = transport
    app = FastAPI(title="ltcat", version="0.1.0", docs_url=None, redoc_url=None)
    app.state.ltcat = state
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"], expose_headers=["X-Total-Count", "Location"])

    store = state.store
    vocabularies = state.vocabularies
    index = state.index

    # -- auth helpers

    def identity(request: Request):
        auth = request.headers.get("authorization", "")
        if auth.lower().startswith("bearer "):
            token = auth[7:].strip()
            info = state.config.tokens.get(token)
            if info is not None:
                return info
        return None

    def require_writer(request: Request):
        info = identity(request)
        if info is None:
            raise PermissionError("a contributor or admin token is required")
        return info

    def require_admin(request: Request):
        info = identity(request)
        if info is None or info.role != "admin":
            raise PermissionError("an admin token is required")
        return info

    def check_own(info, stored):
        if info.role == "admin":
            return
        if stored.owner and stored.owner != info.name:
            raise PermissionError(f"record is owned by {stored.owner}")

    # -- error handling

    @app.exception_handler(LtcatError)
    async def ltcat_error(request: Request, exc: LtcatError):
        if isinstance(exc, NotCompliant):
            return _error(422, "NOT_COMPLIANT", str(exc), exc.report.as_dict())
        for cls, status, code in _ERROR_MAP:
            if isinstance(exc, cls):
                return _error(status, code, str(exc))
        return _error(400, "BAD_REQUEST", str(exc))

    @app.exception_handler(PermissionError)
    async def permission_error(request: Request, exc: PermissionError):
        authed = identity(request) is not None
        return _error(403 if authed else 401,
                      "FORBIDDEN" if authed else "UNAUTHORIZED", str(exc))

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request: Request, exc: StarletteHTTPException):
        return _error(exc.status_code, "HTTP_ERROR", str(exc.detail))

    @app.exception_handler(RequestValidationError)
    async def request_error(request: Request, exc: RequestValidationError):
        return _error(400, "BAD_REQUEST", str(exc))

    # -- body parsing

    async def tree_from_request(request: Request):
        raw = await request.body()
        content_type = request.headers.get("content-type", "application/json")
        if "xml" in content_type:
            return parse_xml(raw.decode("utf-8"))
        try:
            obj = json.loads(raw.decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise JsonSyntaxError(str(exc))
        return json_obj_to_tree(obj)

    def render_record(record, fmt: str):
        if fmt == "xml":
            return Response(emit_xml(record, vocabularies),
                            media_type="application/xml")
        if fmt == "jsonld":
            return Response(emit_jsonld(record, default_bindings(vocabularies),
                                        vocabularies),
                            media_type="application/ld+json")
        if fmt == "dcat":
            return Response(to_dcat(record, vocabularies),
                            media_type="application/ld+json")
        if fmt == "schemaorg":
            return Response(to_schema_org(record, vocabularies),
                            media_type="application/ld+json")
        return Response(emit_json(record, vocabularies),
                        media_type="application/json")

    def pick_format(request: Request) -> str:
        fmt = request.query_params.get("format")
        if fmt:
            return fmt
        accept = request.headers.get("accept", "")
        if "application/xml" in accept or "text/xml" in accept:
            return "xml"
        if "application/ld+json" in accept:
            return "jsonld"
        return "json"

    # -- records

    @app.post("/records", status_code=201)
    async def create_record(request: Request):
        info = require_writer(request)
        tree = await tree_from_request(request)
        record, report = validate_tree(tree, vocabularies)
        if record is None:
            return _error(422, "NOT_COMPLIANT", "record is not minimal-compliant",
                          report.as_dict())
        record_id = store.put(record, actor=info.name)
        return JSONResponse(
            status_code=201,
            content={"id": record_id.value, "report": report.as_dict()},
            headers={"Location": f"/records/{record_id.value}"})

    @app.get("/records")
    async def list_records(request: Request, status: str | None = None,
                           page: int = 1, size: int = 50,
                           include_deleted: bool = False):
        if include_deleted:
            info = identity(request)
            if info is None or info.role != "admin":
                raise PermissionError("listing deleted records requires admin")
        result = store.list(status=status, include_deleted=include_deleted,
                            page=page, size=size)
        from .search import summarize
        items = [dict(summarize(s).as_dict(), revision=s.revision,
                      deleted=s.deleted) for s in result.items]
        return JSONResponse(content={"items": items, "total": result.total,
                                     "page": result.page, "size": result.size},
                            headers={"X-Total-Count": str(result.total)})

    @app.get("/records/{record_id}")
    async def get_record(record_id: str, request: Request):
        stored = store.get(record_id)
        if stored.deleted:
            info = identity(request)
            include = request.query_params.get("include_deleted") == "true"
            if not (include and info is not None and info.role == "admin"):
                raise NotFound(record_id)
        response = render_record(stored.record, pick_format(request))
        response.headers["X-Revision"] = str(stored.revision)
        return response

    @app.put("/records/{record_id}")
    async def update_record(record_id: str, request: Request):
        info = require_writer(request)
        stored = store.get(record_id)
        check_own(info, stored)
        revision_header = request.headers.get("x-revision")
        expected = int(revision_header) if revision_header else None
        tree = await tree_from_request(request)
        record, report = validate_tree(tree, vocabularies)
        if record is None:
            return _error(422, "NOT_COMPLIANT", "record is not minimal-compliant",
                          report.as_dict())
        revision = store.update(record_id, record, actor=info.name,
                                expected_revision=expected)
        return {"id": record_id, "revision": revision}

    @app.delete("/records/{record_id}", status_code=204)
    async def delete_record(record_id: str, request: Request):
        info = require_writer(request)
        stored = store.get(record_id)
        check_own(info, stored)
        store.soft_delete(record_id, actor=info.name)
        return Response(status_code=204)

    @app.post("/records:validate")
    async def validate_only(request: Request):
        tree = await tree_from_request(request)
        _record, report = validate_tree(tree, vocabularies)
        return report.as_dict()

    @app.post("/records/{record_id}:claim")
    async def claim_record(record_id: str, request: Request):
        info = require_writer(request)
        store.claim(record_id, actor=info.name)
        return {"id": record_id, "status": "claimed"}

    @app.post("/records/{record_id}:set-status")
    async def set_status(record_id: str, request: Request):
        info = require_writer(request)
        body = json.loads(await request.body() or b"{}")
        status = body.get("status", "")
        stored = store.get(record_id)
        check_own(info, stored)
        store.set_status(record_id, status, actor=info.name,
                         admin=info.role == "admin")
        return {"id": record_id, "status": status}

    # -- search / landscape

    @app.get("/search")
    async def search_records(request: Request):
        params = request.query_params
        filters: dict[str, list[str]] = {}
        for key in params.keys():
            if key.startswith("facet."):
                filters[key[6:]] = list(params.getlist(key))
        try:
            page = int(params.get("page", 1))
            size = int(params.get("size", 20))
        except ValueError as exc:
            raise BadPage(str(exc))
        query = SearchQuery(
            text=params.get("q"),
            facet_filters=filters,
            page=page,
            page_size=size,
            sort=params.get("sort", "relevance"),
        )
        hits, facets, total = index.search(query)
        return JSONResponse(
            content={"total": total,
                     "hits": [h.as_dict() for h in hits],
                     "facets": [f.as_dict() for f in facets]},
            headers={"X-Total-Count": str(total)})

    @app.get("/landscape")
    async def landscape(a: str, b: str):
        view = index.landscape(a, b)
        return view.as_dict()

    # -- taxonomy / vocabularies

    def vocab_payload(vocab):
        return {"id": vocab.id,
                "concepts": [{
                    "iri": c.iri,
                    "prefLabel": {lt.lang: lt.text for lt in c.pref_labels},
                    "altLabels": [{lt.lang: lt.text} for lt in c.alt_labels],
                    "broader": c.broader,
                    "deprecated": c.deprecated,
                } for c in vocab.concepts]}

    @app.get("/taxonomy")
    async def get_taxonomy(vocabulary: str = "lt-taxonomy"):
        vocab = vocabularies.get(vocabulary)
        if vocab is None:
            raise UnknownConcept(f"no vocabulary {vocabulary!r}")
        return vocab_payload(vocab)

    @app.get("/taxonomy/{iri:path}/descendants")
    async def taxonomy_descendants(iri: str, vocabulary: str = "lt-taxonomy"):
        # the IRI may stand raw in the path (slashes included) or be
        # percent-encoded into one segment
        vocab = vocabularies.get(vocabulary)
        if vocab is None:
            raise UnknownConcept(f"no vocabulary {vocabulary!r}")
        decoded = urllib.parse.unquote(iri)
        return {"iri": decoded,
                "descendants": sorted(vocab.descendants(decoded))}

    @app.get("/taxonomy/candidates")
    async def taxonomy_candidates(min_count: int = 2):
        records = [s.record for s in store.all_records()]
        cands = propose_keywords(records, min_count, vocabularies["lt-taxonomy"])
        return {"candidates": [{
            "keyword": c.keyword, "occurrenceCount": c.occurrence_count,
            "coOccurring": list(c.co_occurring), "status": c.status,
        } for c in cands]}

    @app.post("/taxonomy/candidates/{keyword}:accept")
    async def accept_keyword(keyword: str, request: Request):
        require_admin(request)
        body = json.loads(await request.body() or b"{}")
        concept = accept_candidate(vocabularies, urllib.parse.unquote(keyword),
                                   pref_label=body.get("prefLabel"),
                                   broader=body.get("broader"))
        return {"iri": concept.iri, "prefLabel": concept.pref_label(),
                "broader": concept.broader, "status": "accepted"}

    @app.get("/vocabularies")
    async def list_vocabularies():
        return {"vocabularies": vocabularies.ids()}

    @app.get("/vocabularies/{vocab_id}")
    async def get_vocabulary(vocab_id: str):
        vocab = vocabularies.get(vocab_id)
        if vocab is None:
            raise UnknownConcept(f"no vocabulary {vocab_id!r}")
        return vocab_payload(vocab)

    @app.get("/vocabularies/{vocab_id}/search")
    async def search_vocabulary(vocab_id: str, label: str = ""):
        vocab = vocabularies.get(vocab_id)
        if vocab is None:
            raise UnknownConcept(f"no vocabulary {vocab_id!r}")
        needle = label.casefold()
        hits = []
        for concept in vocab.concepts:
            texts = [lt.text for lt in concept.pref_labels + concept.alt_labels]
            if any(needle in t.casefold() for t in texts):
                hits.append({"iri": concept.iri, "prefLabel": concept.pref_label()})
        return {"hits": hits}

    # -- matching

    @app.get("/records/{record_id}/matches")
    async def record_matches(record_id: str):
        stored = store.get(record_id)
        from .schema import ToolService
        if not isinstance(stored.record.entity, ToolService):
            return _error(400, "NOT_A_TOOL",
                          "compatibility candidates exist for tools only")
        catalogue = [s.record for s in store.all_records()]
        reports = candidates(stored.record, catalogue)
        return {"tool": record_id, "matches": [r.as_dict() for r in reports]}

    @app.post("/pipelines:compose")
    async def compose_pipelines(request: Request):
        body = json.loads(await request.body() or b"{}")
        tool_ids = body.get("tools", [])
        max_len = int(body.get("maxLen", 3))
        tools = {}
        for tool_id in tool_ids:
            stored = store.get(tool_id)
            tools[tool_id] = stored.record
        pipelines = compose(tools, max_len)
        return {"pipelines": [p.as_dict() for p in pipelines]}

    # -- harvesting

    @app.post("/harvest/{source_id}:run")
    async def run_harvest(source_id: str, request: Request):
        require_admin(request)
        run = state.harvester.harvest(source_id)
        return run.as_dict()

    @app.get("/harvest/{source_id}/runs")
    async def harvest_runs(source_id: str):
        return {"runs": [r.as_dict() for r in state.harvester.list_runs(source_id)]}

    # -- schema registry & stats

    @app.get("/schema/subtypes")
    async def schema_subtypes():
        return {"subtypes": list(SUBTYPES)}

    @app.get("/schema/registry/{subtype}")
    async def schema_registry(subtype: str):
        envelope_paths = {s.path for s in F.ENVELOPE_FIELDS}
        is_lr = subtype in F.LR_SUBTYPE_TABLES
        if is_lr:
            common_chain = ["DescribedEntity", "LanguageResource"]
            entity_chain = common_chain + ["LRSubclass", subtype]
            common_heads = {s.path for s in F.LR_COMMON_FIELDS}
        else:
            F.entity_fields(subtype)  # raises UnknownSubtype
            entity_chain = ["DescribedEntity", subtype]
            common_chain = entity_chain
            common_heads = set()
        rows = []
        for path, spec in F.registry_specs(subtype):
            if path == "entity":
                continue
            head = path.split(".")[0].replace("[]", "")
            if head in envelope_paths:
                scope = "envelope"
            elif head in common_heads:
                scope = "common"
            else:
                scope = "subtype"
            rows.append({
                "path": path,
                "jsonKey": spec.json,
                "scope": scope,
                "label": spec.path.replace("_", " "),
                "level": spec.level,
                "condition": spec.condition,
                "kind": spec.kind,
                "vocabulary": spec.vocabulary,
                "repeatable": spec.kind in (
                    "textlist", "langmap", "langlist", "langtags", "concepts",
                    "identifiers", "contactpoints", "reflist", "relations",
                    "sizes", "objects"),
            })
        return {"subtype": subtype, "fields": rows,
                "commonChain": common_chain,
                "entityChain": entity_chain,
                "lrTypeToken": (F.LR_SUBTYPE_TABLES[subtype][0] if is_lr else None)}

    @app.get("/stats/metadata-usage")
    async def metadata_usage():
        counts: dict[str, dict[str, int]] = {}
        totals: dict[str, int] = {}
        for stored in store.all_records():
            subtype = type(stored.record.entity).__name__
            totals[subtype] = totals.get(subtype, 0) + 1
            per = counts.setdefault(subtype, {})
            for path in F.populated_paths(stored.record):
                per[path] = per.get(path, 0) + 1
        usage = {}
        for subtype, total in sorted(totals.items()):
            per = counts[subtype]
            usage[subtype] = {
                "records": total,
                "fillRates": {path: round(per.get(path, 0) / total, 4)
                              for path, _level in F.field_registry(subtype)},
            }
        return {"usage": usage}

    @app.get("/")
    async def root():
        return {"service": "ltcat", "version": "0.1.0",
                "records": store.list(page=1, size=1).total}

    return app


def run(config: Config) -> None:
    import uvicorn
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
