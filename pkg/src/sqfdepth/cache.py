"""On-disk cache of invariant values keyed by their semantic parameters.

Each entry stores the value, its certificate and a SHA-256 digest over
key, value and certificate.  A hit is only served after the digest matches
and the certificate re-validates against a freshly built instance; anything
else is dropped and recomputed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .invariants import InvariantValue, check_certificate, compute_invariant, field_name
from .sdepth import DEFAULT_CAP

log = logging.getLogger(__name__)

CACHE_ENV = "SQFDEPTH_CACHE_DIR"
CACHE_FILE = "results.json"


def default_cache_path() -> Path | None:
    root = os.environ.get(CACHE_ENV)
    return Path(root) / CACHE_FILE if root else None


def _key(family: str, n: int, k: int, invariant: str, characteristic: int) -> str:
    # only depth depends on the field
    field = field_name(characteristic) if invariant.startswith("depth") else "any"
    return f"{family}|{n}|{k}|{invariant}|{field}"


def _digest(key: str, value: int, certificate) -> str:
    blob = json.dumps([key, value, certificate], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.entries: dict[str, dict] = {}
        self.hits = 0
        self.rejected = 0
        if self.path.exists():
            try:
                data = json.loads(self.path.read_text())
                if isinstance(data, dict):
                    self.entries = data
            except (OSError, json.JSONDecodeError) as exc:
                log.warning("ignoring unreadable cache %s: %s", self.path, exc)

    def lookup(self, family: str, n: int, k: int, invariant: str, characteristic: int, cap: int = DEFAULT_CAP):
        key = _key(family, n, k, invariant, characteristic)
        entry = self.entries.get(key)
        if entry is None:
            return None
        try:
            value, cert, digest = entry["value"], entry["certificate"], entry["digest"]
            ok = digest == _digest(key, value, cert) and check_certificate(
                invariant, family, n, k, value, cert, characteristic, cap
            )
        except (KeyError, TypeError):
            ok = False
        if not ok:
            log.warning("dropping cache entry %s: certificate does not re-validate", key)
            self.rejected += 1
            del self.entries[key]
            return None
        self.hits += 1
        return InvariantValue(value, cert)

    def store(self, family: str, n: int, k: int, invariant: str, characteristic: int, result: InvariantValue) -> None:
        key = _key(family, n, k, invariant, characteristic)
        self.entries[key] = {
            "value": result.value,
            "certificate": result.certificate,
            "digest": _digest(key, result.value, result.certificate),
        }

    def save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(self.entries, fh, sort_keys=True, indent=1)
        os.replace(tmp, self.path)


class Calculator:
    """Memoised invariant computation with an optional persistent cache."""

    def __init__(self, characteristic: int = 0, cap: int = DEFAULT_CAP, cache: ResultCache | None = None):
        self.characteristic = characteristic
        self.cap = cap
        self.cache = cache
        self._memo: dict[tuple, InvariantValue] = {}

    def get(self, invariant: str, family: str, n: int, k: int, characteristic: int | None = None) -> InvariantValue:
        ch = self.characteristic if characteristic is None else characteristic
        if not invariant.startswith("depth"):
            ch = 0
        memo_key = (invariant, family, n, k, ch)
        if memo_key in self._memo:
            return self._memo[memo_key]
        result = None
        if self.cache is not None:
            result = self.cache.lookup(family, n, k, invariant, ch, self.cap)
        if result is None:
            result = compute_invariant(invariant, family, n, k, ch, self.cap)
            if self.cache is not None:
                self.cache.store(family, n, k, invariant, ch, result)
        self._memo[memo_key] = result
        return result

    def value(self, invariant: str, family: str, n: int, k: int, characteristic: int | None = None) -> int:
        return self.get(invariant, family, n, k, characteristic).value
