from __future__ import annotations

import hashlib
import json
from pathlib import Path

from simplicial import SimplicialComplex


def cache_key(K: SimplicialComplex, command: str, rings: list[str], N: int | None, extra: str = "") -> str:
    raw = "|".join([K.canonical_key(), command, ",".join(rings), "" if N is None else str(N), extra])
    return hashlib.sha256(raw.encode("utf-8")).hexdigest()


class ResultCache:
    """One JSON file per key under a directory; None disables caching."""

    def __init__(self, directory: str | Path | None) -> None:
        self.directory = Path(directory) if directory else None

    def _path(self, key: str) -> Path:
        assert self.directory is not None
        return self.directory / key[:2] / f"{key}.json"

    def get(self, key: str) -> dict | None:
        if self.directory is None:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError:
            # half-written by an interrupted run
            return None

    def put(self, key: str, payload: dict) -> None:
        if self.directory is None:
            return
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp_path = path.with_suffix(".json.tmp")
        tmp_path.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")
        tmp_path.replace(path)
