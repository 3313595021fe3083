"""Content-addressed JSON cache shared by CLI invocations.

Keys hash the operation name, its canonical parameters and a code-version
tag.  Entries are written to a temporary file and renamed into place, so a
reader sees either nothing or a complete entry.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from pathlib import Path

import platformdirs

__all__ = ["CODE_VERSION", "ENV_VAR", "resolve_cache_dir", "Cache"]

# bump when a formula changes so stale entries stop matching
CODE_VERSION = "hallshuffle-0.1.0/1"
ENV_VAR = "HALLSHUFFLE_CACHE"


def resolve_cache_dir(flag=None) -> Path:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(platformdirs.user_cache_dir("hallshuffle"))


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class Cache:
    def __init__(self, directory=None, enabled=True):
        self.enabled = enabled
        self.directory = resolve_cache_dir(directory) if enabled else None

    @staticmethod
    def key(op: str, params) -> str:
        blob = _canonical([op, params, CODE_VERSION])
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key):
        return self.directory / key[:2] / f"{key}.json"

    def get(self, op, params):
        if not self.enabled:
            return None
        path = self._path(self.key(op, params))
        try:
            entry = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if entry.get("op") != op or entry.get("params") != params:
            return None
        return entry.get("payload")

    def put(self, op, params, payload):
        if not self.enabled:
            return
        key = self.key(op, params)
        path = self._path(key)
        entry = {
            "key": key,
            "op": op,
            "params": params,
            "version": CODE_VERSION,
            "createdAt": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "payload": payload,
        }
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w") as fh:
                fh.write(_canonical(entry))
            os.replace(tmp, path)
        except OSError:
            # a read-only or full cache only costs recomputation
            try:
                os.unlink(tmp)
            except (OSError, UnboundLocalError):
                pass

    def get_or_compute(self, op, params, compute):
        """Cached JSON payload, or ``compute()`` stored for next time."""
        hit = self.get(op, params)
        if hit is not None:
            return hit
        payload = compute()
        self.put(op, params, payload)
        return payload
