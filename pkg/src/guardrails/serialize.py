"""Canonical JSON encoding and content digests.

All interchange artifacts (dataset JSON, guardrail sets, chart specs) are
serialized through this module so that CLI output, HTTP responses, and files
on disk are byte-identical for identical inputs: sorted keys, compact
separators, UTF-8, and shortest round-trip float formatting (Python's repr).
"""
from __future__ import annotations

import hashlib
import json
import math
from typing import Any


def _clean(obj: Any) -> Any:
    """Reject non-finite floats; normalize integral floats stay as floats."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError("non-finite float cannot enter canonical JSON")
        return obj
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def canonical_json_bytes(obj: Any) -> bytes:
    """Encode to canonical JSON bytes (stable across runs and platforms)."""
    return json.dumps(
        _clean(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def canonical_json_str(obj: Any) -> str:
    return canonical_json_bytes(obj).decode("utf-8")


def content_digest(data: bytes | Any) -> str:
    """sha256 hex digest; non-bytes inputs are canonicalized first."""
    if not isinstance(data, bytes):
        data = canonical_json_bytes(data)
    return hashlib.sha256(data).hexdigest()


def fnv1a64(text: str) -> int:
    """64-bit FNV-1a hash of UTF-8 text; used for stable default seeds."""
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h
