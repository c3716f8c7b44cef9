"""Service/CLI configuration: one JSON file shared by both.

Keys (all optional): data_dir, source_code, host, port,
tokens {token: {role, name}}, sources [{id, url, profile, page_size}],
vocabulary_dir (overlay .vocab files merged over the shipped set).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .harvest import HarvestSource

ROLES = ("anonymous", "contributor", "admin")


@dataclass(frozen=True)
class TokenInfo:
    role: str
    name: str


@dataclass(frozen=True)
class Config:
    data_dir: str = "./ltcat-data"
    source_code: str = "LOC"
    host: str = "127.0.0.1"
    port: int = 8800
    tokens: dict = field(default_factory=dict)  # token -> TokenInfo
    sources: tuple[HarvestSource, ...] = ()
    vocabulary_dir: str | None = None


def load_config(path: str | Path | None) -> Config:
    if path is None:
        return Config()
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    tokens = {}
    for token, info in obj.get("tokens", {}).items():
        role = info.get("role", "contributor")
        if role not in ROLES:
            raise ValueError(f"unknown role {role!r} for a token")
        tokens[token] = TokenInfo(role=role, name=info.get("name", "unknown"))
    sources = tuple(
        HarvestSource(id=s["id"], base_url=s["url"],
                      profile=s.get("profile", "elg-share"),
                      page_size=int(s.get("page_size", 50)))
        for s in obj.get("sources", []))
    return Config(
        data_dir=obj.get("data_dir", "./ltcat-data"),
        source_code=obj.get("source_code", "LOC"),
        host=obj.get("host", "127.0.0.1"),
        port=int(obj.get("port", 8800)),
        tokens=tokens,
        sources=sources,
        vocabulary_dir=obj.get("vocabulary_dir"),
    )
