"""On-disk JSON cache for computed dimensions, series and reports."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__

DEFAULT_DIR = Path.home() / ".cache" / "superforms"


class ResultCache:
    """One JSON file per key; entries that fail to parse or match their key are dropped."""

    def __init__(self, root: str | os.PathLike | None = None, enabled: bool = True):
        self.root = Path(root) if root is not None else DEFAULT_DIR
        self.enabled = enabled

    @staticmethod
    def key(kind: str, n: int, bidegree=None, **params) -> dict:
        return {
            "version": __version__,
            "kind": kind,
            "n": n,
            "bidegree": list(bidegree) if bidegree is not None else None,
            "params": {k: params[k] for k in sorted(params)},
        }

    def _path(self, key: dict) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()
        return self.root / f"{digest[:32]}.json"

    def get(self, key: dict):
        if not self.enabled:
            return None
        path = self._path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                entry = json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, ValueError):
            self._discard(path)
            return None
        if not isinstance(entry, dict) or entry.get("key") != key or "value" not in entry:
            self._discard(path)
            return None
        return entry["value"]

    def put(self, key: dict, value) -> None:
        if not self.enabled:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump({"key": key, "value": value}, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            self._discard(Path(tmp))
            raise

    def clear(self) -> int:
        if not self.root.is_dir():
            return 0
        count = 0
        for path in self.root.glob("*.json"):
            self._discard(path)
            count += 1
        for path in self.root.glob("*.tmp"):
            self._discard(path)
        return count

    @staticmethod
    def _discard(path: Path) -> None:
        try:
            path.unlink()
        except OSError:
            pass
