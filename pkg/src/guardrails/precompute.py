"""Precomputed guardrail sets keyed by content digest.

One JSON file per (dataset, focal, strategy kind), plus an index mapping to
digests and storage keys. Reruns with unchanged inputs rewrite nothing; the
service serves stored bytes whenever the requested spec digest matches.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .dataset import TimeSeriesDataset
from .serialize import canonical_json_bytes, content_digest
from .strategies import StrategySpec, compute_guardrails

INDEX_NAME = "index.json"


@dataclass
class PrecomputeIndex:
    """dataset_id -> focal_id -> strategy kind -> {digest, path, spec...}."""

    entries: dict[str, dict[str, dict[str, dict[str, Any]]]] = field(default_factory=dict)

    def get(self, dataset_id: str, focal_id: str, kind: str) -> dict[str, Any] | None:
        return self.entries.get(dataset_id, {}).get(focal_id, {}).get(kind)

    def put(self, dataset_id: str, focal_id: str, kind: str, entry: dict[str, Any]) -> None:
        self.entries.setdefault(dataset_id, {}).setdefault(focal_id, {})[kind] = entry

    def to_json_obj(self) -> dict[str, Any]:
        return self.entries

    @classmethod
    def load(cls, directory: str | Path) -> "PrecomputeIndex":
        path = Path(directory) / INDEX_NAME
        if not path.exists():
            return cls()
        return cls(entries=json.loads(path.read_text("utf-8")))

    def save(self, directory: str | Path) -> None:
        path = Path(directory) / INDEX_NAME
        path.write_bytes(canonical_json_bytes(self.entries))


@dataclass
class PrecomputeOutcome:
    written: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)


def precompute_guardrails(
    ds: TimeSeriesDataset,
    focal_ids: Iterable[str],
    kinds: Sequence[str],
    out_dir: str | Path,
    seed: int | None = None,
    provider: Any = None,
) -> tuple[PrecomputeIndex, PrecomputeOutcome]:
    """Compute every requested (focal, strategy) set; idempotent on rerun."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    index = PrecomputeIndex.load(out_dir)
    outcome = PrecomputeOutcome()
    for focal_id in focal_ids:
        for kind in kinds:
            spec = StrategySpec(kind=kind, seed=seed)
            result = compute_guardrails(ds, focal_id, spec, provider=provider)
            data = result.to_canonical_bytes()
            digest = content_digest(data)
            key = f"{ds.dataset_id}/{focal_id}/{kind}.json"
            target = out_dir / key
            if target.exists() and content_digest(target.read_bytes()) == digest:
                outcome.skipped.append(key)
            else:
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_bytes(data)
                outcome.written.append(key)
            index.put(
                ds.dataset_id,
                focal_id,
                kind,
                {
                    "digest": digest,
                    "path": key,
                    "spec": result.strategy.to_json_obj(),
                    "dataset_digest": ds.digest(),
                },
            )
    index.save(out_dir)
    return index, outcome


def lookup_bytes(
    index: PrecomputeIndex,
    directory: str | Path,
    dataset_id: str,
    focal_id: str,
    spec: StrategySpec,
) -> bytes | None:
    """Stored guardrail bytes if an entry exists and its spec matches."""
    entry = index.get(dataset_id, focal_id, spec.kind)
    if entry is None:
        return None
    if canonical_json_bytes(entry["spec"]) != canonical_json_bytes(spec.to_json_obj()):
        return None
    path = Path(directory) / entry["path"]
    if not path.exists():
        return None
    data = path.read_bytes()
    if content_digest(data) != entry["digest"]:
        return None
    return data
