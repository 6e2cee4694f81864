"""On-disk cache for expensive generic artifacts.

Each entry is one JSON file holding the key, the payload as a canonical JSON
string, and the payload's SHA-256.  Writes go to a temporary file in the
same directory followed by os.replace, so concurrent writers never expose a
half-written entry.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

FORMAT_VERSION = 1


class CacheCorrupt(Exception):
    pass


def cache_dir() -> Path:
    env = os.environ.get("MULNPOLY_CACHE")
    if env:
        return Path(env)
    root = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(root) / "mulnpoly"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _path(kind: str, n: int) -> Path:
    return cache_dir() / f"{kind}-n{n}-v{FORMAT_VERSION}.json"


def load(kind: str, n: int):
    """The cached payload, None on a miss, CacheCorrupt on a bad entry."""
    path = _path(kind, n)
    try:
        raw = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        return None
    try:
        entry = json.loads(raw)
        payload = entry["payload"]
        checksum = entry["checksum"]
        key = entry["key"]
    except (ValueError, KeyError, TypeError) as exc:
        raise CacheCorrupt(f"{path}: unreadable cache entry ({exc})") from None
    if key != {"kind": kind, "n": n, "version": FORMAT_VERSION}:
        raise CacheCorrupt(f"{path}: key mismatch {key}")
    if hashlib.sha256(payload.encode("utf-8")).hexdigest() != checksum:
        raise CacheCorrupt(f"{path}: checksum mismatch")
    return json.loads(payload)


def store(kind: str, n: int, payload) -> Path:
    path = _path(kind, n)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = canonical_json(payload)
    entry = {"key": {"kind": kind, "n": n, "version": FORMAT_VERSION},
             "checksum": hashlib.sha256(text.encode("utf-8")).hexdigest(),
             "payload": text}
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(entry))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path
