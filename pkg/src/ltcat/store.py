"""Record persistence: append-only log, in-memory index, identifier
assignment, revisions and the curation lifecycle.

Log format (docs/formats.md): a sequence of frames, each
``<u32 length><u32 crc32><payload>`` big-endian, payload = UTF-8 canonical
JSON of one event. Replay rebuilds the full state; a truncated tail frame
(crash mid-write) is dropped. Many readers, one serialized writer.
"""

from __future__ import annotations

import datetime as _dt
import json
import os
import struct
import threading
import zlib
from dataclasses import dataclass, replace
from pathlib import Path

from .exceptions import (
    BadPage, ConflictingUpdate, IllegalTransition, NotCompliant, NotFound,
    StorageError,
)
from .schema import (
    Identifier, IdentifierAllocator, LanguageResource, MetadataRecord,
)
from .serialization import json_obj_to_tree, record_to_json_obj
from .validation import validate_tree
from .vocab import VocabularySet

DATA_DIR_ENV = "LTCAT_DATA_DIR"

_FRAME_HEADER = struct.Struct(">II")

# Legal curation moves; admins may additionally revert one step.
_FORWARD = {
    "ingested": "claimed",
    "claimed": "curated",
    "curated": "validated",
}
_REVERT = {v: k for k, v in _FORWARD.items()}


def write_frame(fh, payload: bytes) -> None:
    fh.write(_FRAME_HEADER.pack(len(payload), zlib.crc32(payload) & 0xFFFFFFFF))
    fh.write(payload)


def read_frames(fh):
    """Yield payloads; stop silently at a truncated or corrupt tail."""
    while True:
        header = fh.read(_FRAME_HEADER.size)
        if len(header) < _FRAME_HEADER.size:
            return
        length, crc = _FRAME_HEADER.unpack(header)
        payload = fh.read(length)
        if len(payload) < length or (zlib.crc32(payload) & 0xFFFFFFFF) != crc:
            return
        yield payload


def _encode_event(event: dict) -> bytes:
    return json.dumps(event, sort_keys=True, ensure_ascii=False).encode("utf-8")


@dataclass(frozen=True)
class HistoryEntry:
    revision: int
    timestamp: str
    actor: str
    summary: str


@dataclass(frozen=True)
class StoredRecord:
    record: MetadataRecord
    revision: int
    deleted: bool = False
    owner: str | None = None
    history: tuple[HistoryEntry, ...] = ()

    @property
    def record_id(self) -> str:
        return self.record.record_id.value


@dataclass(frozen=True)
class Page:
    items: tuple[StoredRecord, ...]
    total: int
    page: int
    size: int


class Store:
    """Durable record store over one append-only log file."""

    def __init__(self, data_dir: str | os.PathLike | None = None, *,
                 vocabularies: VocabularySet,
                 source_code: str = "LOC"):
        if data_dir is None:
            data_dir = os.environ.get(DATA_DIR_ENV, "./ltcat-data")
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.log_path = self.data_dir / "records.log"
        self.vocabularies = vocabularies
        self.allocator = IdentifierAllocator(source_code)
        self._lock = threading.Lock()
        self._records: dict[str, StoredRecord] = {}
        self._by_provenance: dict[tuple[str, str], str] = {}
        self._listeners: list = []
        self._replay()
        self._fh = open(self.log_path, "ab")

    # -- listeners (the search index subscribes)

    def subscribe(self, listener) -> None:
        """listener(event, stored_record) called after each committed write."""
        self._listeners.append(listener)

    def _notify(self, event: str, stored: StoredRecord) -> None:
        for listener in self._listeners:
            listener(event, stored)

    # -- replay / apply

    def _replay(self) -> None:
        if not self.log_path.exists():
            return
        with open(self.log_path, "rb") as fh:
            for payload in read_frames(fh):
                try:
                    event = json.loads(payload.decode("utf-8"))
                except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                    raise StorageError(f"corrupt log frame: {exc}")
                self._apply(event)

    def _record_from_event(self, event: dict) -> MetadataRecord:
        tree = json_obj_to_tree(event["record"])
        record, report = validate_tree(tree, self.vocabularies)
        if record is None:
            raise StorageError(
                f"log record {event.get('id')} no longer validates: "
                + "; ".join(f.path for f in report.errors()))
        return record

    def _apply(self, event: dict) -> StoredRecord | None:
        etype = event["type"]
        if etype == "put":
            record = self._record_from_event(event)
            stored = StoredRecord(
                record=record, revision=1, owner=event.get("actor"),
                history=(HistoryEntry(1, event["ts"], event.get("actor") or "", "created"),))
            self._records[event["id"]] = stored
            self.allocator.observe(event["id"])
            if record.source is not None:
                self._by_provenance[(record.source.source_id,
                                     record.source.original_id)] = event["id"]
            if isinstance(record.entity, LanguageResource):
                for ident in record.entity.lr_ids:
                    self.allocator.observe(ident.value)
            return stored
        prev = self._records.get(event["id"])
        if prev is None:
            raise StorageError(f"log event for unknown record {event.get('id')}")
        if etype == "update":
            record = self._record_from_event(event)
            stored = replace(
                prev, record=record, revision=prev.revision + 1,
                history=prev.history + (HistoryEntry(
                    prev.revision + 1, event["ts"], event.get("actor") or "", "updated"),))
        elif etype == "delete":
            stored = replace(
                prev, deleted=True,
                history=prev.history + (HistoryEntry(
                    prev.revision, event["ts"], event.get("actor") or "", "deleted"),))
        elif etype == "status":
            record = replace(prev.record, curation_status=event["status"])
            stored = replace(
                prev, record=record,
                history=prev.history + (HistoryEntry(
                    prev.revision, event["ts"], event.get("actor") or "",
                    f"status -> {event['status']}"),))
        else:
            raise StorageError(f"unknown log event type {etype!r}")
        self._records[event["id"]] = stored
        return stored

    def _append(self, event: dict) -> StoredRecord | None:
        stored = self._apply(event)
        write_frame(self._fh, _encode_event(event))
        self._fh.flush()
        os.fsync(self._fh.fileno())
        return stored

    # -- validation gate

    def _require_compliant(self, record: MetadataRecord) -> None:
        from .validation import validate_minimal
        report = validate_minimal(record, self.vocabularies)
        if not report.is_minimal_compliant:
            raise NotCompliant(report)

    @staticmethod
    def _now() -> str:
        return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")

    # -- public API

    def put(self, record: MetadataRecord, actor: str = "") -> Identifier:
        """Store a record under a freshly assigned identifier."""
        self._require_compliant(record)
        with self._lock:
            today = _dt.date.today()
            record_id = self.allocator.next("MDR", today)
            entity = record.entity
            if isinstance(entity, LanguageResource):
                if not any(i.scheme == "elg" for i in entity.lr_ids):
                    entity = replace(entity,
                                     lr_ids=entity.lr_ids + (self.allocator.next("ENT", today),))
            stored_record = replace(record, record_id=record_id, entity=entity)
            event = {"type": "put", "id": record_id.value, "actor": actor,
                     "ts": self._now(),
                     "record": record_to_json_obj(stored_record)}
            stored = self._append(event)
        self._notify("put", stored)
        return record_id

    def get(self, record_id: str) -> StoredRecord:
        stored = self._records.get(record_id)
        if stored is None:
            raise NotFound(record_id)
        return stored

    def __contains__(self, record_id: str) -> bool:
        return record_id in self._records

    def exists(self, record_id: str) -> bool:
        return record_id in self._records

    def find_by_provenance(self, source_id: str, original_id: str) -> StoredRecord | None:
        record_id = self._by_provenance.get((source_id, original_id))
        return self._records.get(record_id) if record_id else None

    def update(self, record_id: str, record: MetadataRecord, actor: str = "",
               expected_revision: int | None = None) -> int:
        """Replace the record body; returns the new revision."""
        self._require_compliant(record)
        with self._lock:
            prev = self._records.get(record_id)
            if prev is None or prev.deleted:
                raise NotFound(record_id)
            if expected_revision is not None and expected_revision != prev.revision:
                raise ConflictingUpdate(prev.revision, expected_revision)
            updated = replace(record, record_id=prev.record.record_id,
                              last_updated=_dt.date.today(),
                              creation_date=prev.record.creation_date)
            event = {"type": "update", "id": record_id, "actor": actor,
                     "ts": self._now(), "record": record_to_json_obj(updated)}
            stored = self._append(event)
        self._notify("update", stored)
        return stored.revision

    def soft_delete(self, record_id: str, actor: str = "") -> None:
        with self._lock:
            prev = self._records.get(record_id)
            if prev is None:
                raise NotFound(record_id)
            if prev.deleted:
                return
            stored = self._append({"type": "delete", "id": record_id,
                                   "actor": actor, "ts": self._now()})
        self._notify("delete", stored)

    def claim(self, record_id: str, actor: str) -> None:
        self.set_status(record_id, "claimed", actor)

    def set_status(self, record_id: str, status: str, actor: str,
                   admin: bool = False) -> None:
        """Move along ingested -> claimed -> curated -> validated.

        Admins may revert exactly one step; skips are illegal for everyone.
        """
        with self._lock:
            prev = self._records.get(record_id)
            if prev is None or prev.deleted:
                raise NotFound(record_id)
            current = prev.record.curation_status
            allowed = _FORWARD.get(current) == status or (
                admin and _REVERT.get(current) == status)
            if not allowed:
                raise IllegalTransition(current, status)
            stored = self._append({"type": "status", "id": record_id,
                                   "status": status, "actor": actor,
                                   "ts": self._now()})
        self._notify("update", stored)

    def list(self, status: str | None = None, include_deleted: bool = False,
             page: int = 1, size: int = 50) -> Page:
        if page < 1 or size < 1 or size > 100:
            raise BadPage("page >= 1 and 1 <= size <= 100")
        items = [s for rid, s in sorted(self._records.items())
                 if (include_deleted or not s.deleted)
                 and (status is None or s.record.curation_status == status)]
        start = (page - 1) * size
        return Page(items=tuple(items[start:start + size]), total=len(items),
                    page=page, size=size)

    def all_records(self, include_deleted: bool = False) -> list[StoredRecord]:
        return [s for _, s in sorted(self._records.items())
                if include_deleted or not s.deleted]

    def log_bytes(self) -> bytes:
        """Raw log content (tests use this for byte-level idempotence checks)."""
        self._fh.flush()
        return self.log_path.read_bytes()

    def close(self) -> None:
        self._fh.close()

    def compact(self) -> None:
        """Rewrite the log to one frame per record (plus a delete frame for
        soft-deleted ones). Drops fine-grained history; revisions restart."""
        with self._lock:
            tmp = self.log_path.with_suffix(".log.tmp")
            with open(tmp, "wb") as fh:
                for record_id, stored in sorted(self._records.items()):
                    event = {"type": "put", "id": record_id,
                             "actor": stored.owner or "", "ts": self._now(),
                             "record": record_to_json_obj(stored.record)}
                    write_frame(fh, _encode_event(event))
                    if stored.deleted:
                        write_frame(fh, _encode_event(
                            {"type": "delete", "id": record_id, "actor": "",
                             "ts": self._now()}))
            os.replace(tmp, self.log_path)
            self._fh.close()
            self._fh = open(self.log_path, "ab")
