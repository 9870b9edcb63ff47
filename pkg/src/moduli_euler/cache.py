"""Persistent JSON cache for exact series, keyed by a configuration fingerprint.

Rationals are stored as "num/den" strings so nothing passes through floats.
Entries load only when the stored fingerprint matches exactly; unreadable or
mismatched files are ignored and recomputed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from pathlib import Path

from gmpy2 import mpq

from .series import USeries
from .symfunc import SymFunc

SCHEMA = 1
CODE_VERSION = "1"

log = logging.getLogger(__name__)
_write_lock = threading.Lock()


def default_cache_dir() -> Path:
    env = os.environ.get("MODULI_EULER_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "moduli_euler"


def _q(x) -> str:
    x = mpq(x)
    return f"{x.numerator}/{x.denominator}"


def encode_series(series: USeries) -> dict:
    first = series.c[0] if series.c else mpq(0)
    if isinstance(first, SymFunc):
        return {
            "kind": "symfunc",
            "cap": first.cap,
            "coefficients": [
                [[list(lam), _q(c)] for lam, c in sorted(f.terms().items())] for f in series.c
            ],
        }
    return {"kind": "rational", "coefficients": [_q(x) for x in series.c]}


def decode_series(data: dict) -> USeries:
    if data["kind"] == "symfunc":
        cap = data["cap"]
        return USeries(
            [SymFunc.from_terms({tuple(lam): mpq(c) for lam, c in terms}, cap) for terms in data["coefficients"]]
        )
    if data["kind"] == "rational":
        return USeries([mpq(x) for x in data["coefficients"]])
    raise ValueError(f"unknown series kind {data['kind']!r}")


class SeriesCache:
    def __init__(self, directory=None, enabled: bool = True):
        self.directory = Path(directory) if directory else default_cache_dir()
        self.enabled = enabled

    @staticmethod
    def fingerprint(**config) -> dict:
        return {"schema": SCHEMA, "code_version": CODE_VERSION, **config}

    def _path(self, fingerprint: dict) -> Path:
        key = hashlib.sha256(json.dumps(fingerprint, sort_keys=True).encode()).hexdigest()[:24]
        return self.directory / f"{key}.json"

    def load(self, fingerprint: dict):
        if not self.enabled:
            return None
        path = self._path(fingerprint)
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
            if data.get("fingerprint") != fingerprint:
                return None
            return decode_series(data["series"])
        except FileNotFoundError:
            return None
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", path, exc)
            return None

    def store(self, fingerprint: dict, series: USeries) -> None:
        if not self.enabled:
            return
        path = self._path(fingerprint)
        payload = {"fingerprint": fingerprint, "series": encode_series(series)}
        with _write_lock:
            self.directory.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(payload, fh)
            os.replace(tmp, path)

    def get_or_compute(self, fingerprint: dict, compute):
        hit = self.load(fingerprint)
        if hit is not None:
            return hit
        series = compute()
        self.store(fingerprint, series)
        return series

    def entries(self) -> list[Path]:
        if not self.directory.is_dir():
            return []
        return sorted(self.directory.glob("*.json"))

    def clear(self) -> int:
        removed = 0
        for path in self.entries():
            path.unlink(missing_ok=True)
            removed += 1
        return removed

    def info(self) -> dict:
        files = self.entries()
        return {
            "directory": str(self.directory),
            "entries": len(files),
            "bytes": sum(p.stat().st_size for p in files),
        }
