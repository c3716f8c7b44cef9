"""Incremental catalogue harvesting over a paged JSON listing.

Remote protocol (docs/formats.md): ``GET <base>?from=<iso>&page=<n>&size=<k>``
returns ``{"page": n, "pages": total, "records": [{"id", "updated",
"format": "json"|"xml", "payload"}]}``. Servers may ignore ``from``;
clients deduplicate on (source id, original id) regardless.

Run history and per-source cursors persist in their own log file, so an
unchanged upstream leaves the record store byte-identical.
"""

from __future__ import annotations

import datetime as _dt
import json
import threading
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass, replace

from .crosswalks import from_metashare
from .exceptions import SourceUnavailable, UnknownSource
from .schema import Provenance, record_signature
from .serialization import json_obj_to_tree, parse_xml, record_to_json_obj
from .store import Store, read_frames, write_frame
from .tree import parse_xml_tree
from .validation import validate_import
from .vocab import VocabularySet

PROFILES = ("elg-share", "metashare-legacy")


@dataclass(frozen=True)
class HarvestSource:
    id: str
    base_url: str
    profile: str = "elg-share"
    page_size: int = 50

    def __post_init__(self):
        if self.profile not in PROFILES:
            raise ValueError(f"unknown profile {self.profile!r}")


@dataclass(frozen=True)
class HarvestRun:
    source_id: str
    started: str
    finished: str
    fetched: int
    accepted: int
    rejected: int
    duplicates: int
    findings: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {"source": self.source_id, "started": self.started,
                "finished": self.finished, "fetched": self.fetched,
                "accepted": self.accepted, "rejected": self.rejected,
                "duplicates": self.duplicates, "findings": list(self.findings)}


def _default_transport(url: str) -> bytes:
    try:
        with urllib.request.urlopen(url, timeout=30) as resp:
            return resp.read()
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise SourceUnavailable(str(exc))


def _content_key(record) -> str:
    """Dedup key over record content, ignoring store-assigned identifiers,
    envelope dates and the fetch timestamp."""
    normalized = record_signature(record)
    source = normalized.source
    if source is not None:
        source = Provenance(source.source_id, source.original_id, None)
    normalized = replace(normalized, source=source,
                         creation_date=_dt.date(1970, 1, 1),
                         last_updated=_dt.date(1970, 1, 1))
    return json.dumps(record_to_json_obj(normalized), sort_keys=True)


class Harvester:
    """Runs harvests against configured sources; one run per source at a time."""

    def __init__(self, store: Store, vocabularies: VocabularySet,
                 sources: list[HarvestSource] | None = None,
                 transport=None):
        self.store = store
        self.vocabularies = vocabularies
        self.transport = transport or _default_transport
        self.sources: dict[str, HarvestSource] = {s.id: s for s in (sources or [])}
        self._locks: dict[str, threading.Lock] = {}
        self._state_lock = threading.Lock()
        self._runs: dict[str, list[HarvestRun]] = {}
        self._last: dict[str, str] = {}
        self.state_path = store.data_dir / "harvest.log"
        self._replay_state()

    def add_source(self, source: HarvestSource) -> None:
        self.sources[source.id] = source

    def _replay_state(self) -> None:
        if not self.state_path.exists():
            return
        with open(self.state_path, "rb") as fh:
            for payload in read_frames(fh):
                event = json.loads(payload.decode("utf-8"))
                if event["type"] == "run":
                    run = HarvestRun(findings=tuple(event["run"].pop("findings", [])),
                                     source_id=event["run"].pop("source"),
                                     **event["run"])
                    self._runs.setdefault(run.source_id, []).append(run)
                elif event["type"] == "last":
                    self._last[event["source"]] = event["ts"]

    def _persist(self, run: HarvestRun) -> None:
        with self._state_lock:
            with open(self.state_path, "ab") as fh:
                write_frame(fh, json.dumps(
                    {"type": "run", "run": run.as_dict()},
                    sort_keys=True).encode("utf-8"))
                write_frame(fh, json.dumps(
                    {"type": "last", "source": run.source_id, "ts": run.started},
                    sort_keys=True).encode("utf-8"))
            self._runs.setdefault(run.source_id, []).append(run)
            self._last[run.source_id] = run.started

    def last_harvest(self, source_id: str) -> str | None:
        return self._last.get(source_id)

    def list_runs(self, source_id: str) -> list[HarvestRun]:
        if source_id not in self.sources:
            raise UnknownSource(source_id)
        return list(self._runs.get(source_id, []))

    # -- one run

    def _page_url(self, source: HarvestSource, page: int) -> str:
        params = {"page": str(page), "size": str(source.page_size)}
        last = self._last.get(source.id)
        if last:
            params["from"] = last
        sep = "&" if "?" in source.base_url else "?"
        return source.base_url + sep + urllib.parse.urlencode(params)

    def _convert(self, source: HarvestSource, item: dict):
        """(record | None, problems) for one remote item."""
        payload = item.get("payload")
        fmt = item.get("format", "json")
        if source.profile == "metashare-legacy":
            tree = parse_xml_tree(payload) if isinstance(payload, str) else None
            if tree is None:
                return None, ["payload is not XML text"]
            record, report = from_metashare(tree, self.vocabularies)
            problems = [f"{f.path}: {f.code}" for f in report.findings
                        if f.severity == "error"]
            return record, problems
        if fmt == "xml":
            tree = parse_xml(payload)
        else:
            tree = json_obj_to_tree(payload)
        record, report = validate_import(tree, self.vocabularies)
        problems = [f"{f.path}: {f.code}" for f in report.findings
                    if f.severity == "error"]
        return record, problems

    def harvest(self, source_id: str) -> HarvestRun:
        source = self.sources.get(source_id)
        if source is None:
            raise UnknownSource(source_id)
        lock = self._locks.setdefault(source_id, threading.Lock())
        if not lock.acquire(blocking=False):
            raise SourceUnavailable(f"harvest already running for {source_id}")
        try:
            return self._harvest_locked(source)
        finally:
            lock.release()

    def _harvest_locked(self, source: HarvestSource) -> HarvestRun:
        started = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        fetched = accepted = rejected = duplicates = 0
        findings: list[str] = []
        page = 1
        pages = 1
        while page <= pages:
            raw = self.transport(self._page_url(source, page))
            try:
                envelope = json.loads(raw.decode("utf-8"))
                items = envelope["records"]
                pages = int(envelope.get("pages", 1))
            except (ValueError, KeyError, UnicodeDecodeError) as exc:
                findings.append(f"page {page}: unusable ({exc}); skipped")
                fetched += 1
                rejected += 1
                page += 1
                continue
            for item in items:
                fetched += 1
                original_id = str(item.get("id", ""))
                try:
                    record, problems = self._convert(source, item)
                except Exception as exc:  # converter contract: reject, continue
                    record, problems = None, [str(exc)]
                if record is None:
                    rejected += 1
                    findings.append(f"{original_id}: rejected ({'; '.join(problems) or 'invalid'})")
                    continue
                today = _dt.date.today()
                record = replace(
                    record, curation_status="ingested",
                    source=Provenance(source_id=source.id, original_id=original_id,
                                      harvest_date=today))
                existing = self.store.find_by_provenance(source.id, original_id)
                if existing is None:
                    self.store.put(record, actor=f"harvest:{source.id}")
                    accepted += 1
                elif existing.record.curation_status != "ingested":
                    duplicates += 1
                    findings.append(
                        f"{original_id}: locally curated "
                        f"({existing.record.curation_status}); upstream change not applied")
                elif _content_key(existing.record) == _content_key(record):
                    duplicates += 1
                else:
                    self.store.update(existing.record_id, record,
                                      actor=f"harvest:{source.id}")
                    accepted += 1
            page += 1
        finished = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        run = HarvestRun(source_id=source.id, started=started, finished=finished,
                         fetched=fetched, accepted=accepted, rejected=rejected,
                         duplicates=duplicates, findings=tuple(findings))
        self._persist(run)
        return run
