"""Persistent cache of computed exact values.

One JSON document maps "family:r:k" keys to the computed value plus the
lower certificate (the color list of 1..value-1), a timestamp, and the
solver version.  The cache is append-only; entries are re-verified on
load and again before being served, and an entry that fails its re-check
is moved to a quarantine section instead of being silently dropped.
Writes go through a temp file and an atomic rename.
"""

from __future__ import annotations

import datetime
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .colorability import Coloring
from .equations import Equation, Family
from .exact import verify_no_mono

SOLVER_VERSION = "rado-0.1"


@dataclass
class CacheEntry:
    family: str
    r: int
    k: int
    value: int
    colors: tuple[int, ...]
    timestamp: str
    solver_version: str

    def coloring(self) -> Coloring:
        return Coloring(tuple(range(1, self.value)), self.colors, self.r)


def _key(family: str, r: int, k: int) -> str:
    return f"{family}:{r}:{k}"


class ResultCache:
    """Loads, verifies, serves, and appends cached Rado numbers."""

    def __init__(self, path: str | Path | None):
        self.path = Path(path) if path else None
        self.entries: dict[str, CacheEntry] = {}
        self.quarantined: dict[str, dict] = {}
        self.warnings: list[str] = []
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self) -> None:
        try:
            raw = json.loads(self.path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            self.warnings.append(f"cache file unreadable, starting empty: {exc}")
            return
        self.quarantined.update(raw.get("quarantined", {}))
        dirty = False
        for key, obj in raw.get("entries", {}).items():
            entry = self._parse(key, obj)
            if entry is not None and self._entry_valid(entry):
                self.entries[key] = entry
            else:
                self.quarantined[key] = {
                    "entry": obj,
                    "reason": "failed re-verification on load",
                }
                self.warnings.append(f"cache entry {key} quarantined on load")
                dirty = True
        if dirty:
            self.save()

    @staticmethod
    def _parse(key: str, obj: dict) -> CacheEntry | None:
        try:
            family, r, k = key.rsplit(":", 2)
            return CacheEntry(
                family=family,
                r=int(r),
                k=int(k),
                value=int(obj["value"]),
                colors=tuple(int(c) for c in obj["certificate_low"]),
                timestamp=str(obj.get("timestamp", "")),
                solver_version=str(obj.get("solver_version", "")),
            )
        except (KeyError, ValueError, TypeError):
            return None

    @staticmethod
    def _entry_valid(entry: CacheEntry) -> bool:
        try:
            eq = Equation(Family(entry.family), entry.k)
            if len(entry.colors) != entry.value - 1:
                return False
            if entry.value == 1:
                return True
            return verify_no_mono(eq, entry.coloring()) is None
        except Exception:
            return False

    def lookup(self, family: str, r: int, k: int) -> CacheEntry | None:
        """Serve an entry only after its certificate re-verifies; a failed
        re-check quarantines the entry and reports it."""
        key = _key(family, r, k)
        entry = self.entries.get(key)
        if entry is None:
            return None
        if self._entry_valid(entry):
            return entry
        del self.entries[key]
        self.quarantined[key] = {
            "entry": self._entry_dict(entry),
            "reason": "failed re-verification on lookup",
        }
        self.warnings.append(f"cache entry {key} quarantined on lookup")
        self.save()
        return None

    def store(self, family: str, r: int, k: int, value: int, coloring: Coloring) -> None:
        key = _key(family, r, k)
        entry = CacheEntry(
            family=family,
            r=r,
            k=k,
            value=value,
            colors=tuple(coloring.colors),
            timestamp=datetime.datetime.now(datetime.timezone.utc).isoformat(),
            solver_version=SOLVER_VERSION,
        )
        self.entries[key] = entry
        self.save()

    @staticmethod
    def _entry_dict(entry: CacheEntry) -> dict:
        return {
            "value": entry.value,
            "certificate_low": list(entry.colors),
            "timestamp": entry.timestamp,
            "solver_version": entry.solver_version,
        }

    def save(self) -> None:
        if self.path is None:
            return
        doc = {
            "entries": {k: self._entry_dict(e) for k, e in sorted(self.entries.items())},
            "quarantined": self.quarantined,
        }
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(
            dir=self.path.parent, prefix=self.path.name, suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh, indent=2)
                fh.write("\n")
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def rows(self) -> list[CacheEntry]:
        return [self.entries[k] for k in sorted(self.entries)]


def resolve_cache_path(cli_value: str | None) -> str:
    """RADO_CACHE overrides the flag; the flag overrides the default."""
    env = os.environ.get("RADO_CACHE")
    if env:
        return env
    if cli_value:
        return cli_value
    return "rado-cache.json"
