"""Core dataset model: aligned per-item series over shared timesteps.

A TimeSeriesDataset is immutable after construction. Transforms return new
datasets and append to the transform log, so any derived dataset can be
reproduced by replaying its log against the raw ingest output.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import date
from enum import Enum
from typing import Any, Iterable, Mapping

import numpy as np

from .errors import GuardrailError
from .serialize import canonical_json_bytes, content_digest


class Direction(str, Enum):
    """Whether larger values mean better performance for this dataset."""

    HIGHER_IS_BETTER = "higher_is_better"
    LOWER_IS_BETTER = "lower_is_better"


@dataclass(frozen=True)
class TransformDescriptor:
    """One applied transform: kind plus the params needed to replay it."""

    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)

    KINDS = (
        "resample_weekly",
        "percent_change_from_start",
        "per_million",
        "window_clip",
        "validate",
    )

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise GuardrailError(f"unknown transform kind {self.kind!r}")
        object.__setattr__(self, "params", dict(self.params))

    def to_json_obj(self) -> dict[str, Any]:
        return {"kind": self.kind, "params": dict(self.params)}

    @classmethod
    def from_json_obj(cls, obj: Mapping[str, Any]) -> "TransformDescriptor":
        return cls(kind=obj["kind"], params=dict(obj.get("params", {})))


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ItemSeries:
    """One item's values aligned to the dataset timesteps.

    values[i] is finite wherever missing[i] is False; masked positions hold NaN.
    """

    item_id: str
    display_name: str
    values: np.ndarray
    missing: np.ndarray
    population: float | None = None

    def __post_init__(self) -> None:
        values = _readonly(np.asarray(self.values, dtype=float))
        missing = _readonly(np.asarray(self.missing, dtype=bool))
        if values.ndim != 1 or missing.shape != values.shape:
            raise GuardrailError(f"item {self.item_id!r}: values/missing shape mismatch")
        if not np.all(np.isfinite(values[~missing])):
            raise GuardrailError(f"item {self.item_id!r}: non-finite value at unmasked position")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "missing", missing)

    @property
    def missing_fraction(self) -> float:
        return float(self.missing.mean()) if self.missing.size else 0.0

    def to_json_obj(self) -> dict[str, Any]:
        values = [None if m else float(v) for v, m in zip(self.values, self.missing)]
        obj: dict[str, Any] = {
            "item_id": self.item_id,
            "display_name": self.display_name,
            "values": values,
        }
        if self.population is not None:
            obj["population"] = float(self.population)
        return obj

    @classmethod
    def from_json_obj(cls, obj: Mapping[str, Any]) -> "ItemSeries":
        raw = obj["values"]
        missing = np.array([v is None for v in raw], dtype=bool)
        values = np.array([np.nan if v is None else float(v) for v in raw], dtype=float)
        return cls(
            item_id=obj["item_id"],
            display_name=obj.get("display_name", obj["item_id"]),
            values=values,
            missing=missing,
            population=obj.get("population"),
        )


@dataclass(frozen=True, eq=False)
class TimeSeriesDataset:
    """Aligned matrix of item series over shared, strictly increasing dates."""

    dataset_id: str
    timesteps: tuple[date, ...]
    items: tuple[ItemSeries, ...]
    direction: Direction = Direction.HIGHER_IS_BETTER
    transform_log: tuple[TransformDescriptor, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "timesteps", tuple(self.timesteps))
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "transform_log", tuple(self.transform_log))
        object.__setattr__(self, "direction", Direction(self.direction))
        n = len(self.timesteps)
        for a, b in zip(self.timesteps, self.timesteps[1:]):
            if a >= b:
                raise GuardrailError(f"timesteps not strictly increasing near {a.isoformat()}")
        seen: set[str] = set()
        for item in self.items:
            if len(item.values) != n:
                raise GuardrailError(
                    f"item {item.item_id!r} has {len(item.values)} values for {n} timesteps"
                )
            if item.item_id in seen:
                raise GuardrailError(f"duplicate item_id {item.item_id!r}")
            seen.add(item.item_id)
        object.__setattr__(self, "_index", {it.item_id: it for it in self.items})

    # -- lookups -------------------------------------------------------------

    @property
    def item_ids(self) -> tuple[str, ...]:
        return tuple(it.item_id for it in self.items)

    def __contains__(self, item_id: str) -> bool:
        return item_id in self._index  # type: ignore[attr-defined]

    def get_item(self, item_id: str) -> ItemSeries:
        try:
            return self._index[item_id]  # type: ignore[attr-defined]
        except KeyError:
            raise GuardrailError(
                f"unknown item {item_id!r} in dataset {self.dataset_id!r}"
            ) from None

    def matrix(self) -> np.ndarray:
        """(n_items, n_timesteps) float matrix; masked cells are NaN."""
        if not self.items:
            return np.empty((0, len(self.timesteps)))
        return np.vstack([it.values for it in self.items])

    def has_missing(self) -> bool:
        return any(it.missing.any() for it in self.items)

    def has_transform(self, kind: str) -> bool:
        return any(t.kind == kind for t in self.transform_log)

    # -- derivation helpers ----------------------------------------------------

    def replaced(self, **changes: Any) -> "TimeSeriesDataset":
        return replace(self, **changes)

    def with_log(self, descriptor: TransformDescriptor, **changes: Any) -> "TimeSeriesDataset":
        return replace(self, transform_log=self.transform_log + (descriptor,), **changes)

    # -- interchange -----------------------------------------------------------

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "dataset_id": self.dataset_id,
            "direction": self.direction.value,
            "timesteps": [d.isoformat() for d in self.timesteps],
            "items": [it.to_json_obj() for it in self.items],
            "transform_log": [t.to_json_obj() for t in self.transform_log],
        }

    def to_canonical_bytes(self) -> bytes:
        return canonical_json_bytes(self.to_json_obj())

    def digest(self) -> str:
        return content_digest(self.to_canonical_bytes())

    @classmethod
    def from_json_obj(cls, obj: Mapping[str, Any]) -> "TimeSeriesDataset":
        return cls(
            dataset_id=obj["dataset_id"],
            timesteps=tuple(date.fromisoformat(d) for d in obj["timesteps"]),
            items=tuple(ItemSeries.from_json_obj(it) for it in obj["items"]),
            direction=Direction(obj.get("direction", "higher_is_better")),
            transform_log=tuple(
                TransformDescriptor.from_json_obj(t) for t in obj.get("transform_log", [])
            ),
        )


def load_dataset(path: Any) -> TimeSeriesDataset:
    """Read a dataset JSON file written by save_dataset / the ingest CLI."""
    import json
    from pathlib import Path

    return TimeSeriesDataset.from_json_obj(json.loads(Path(path).read_text("utf-8")))


def save_dataset(ds: TimeSeriesDataset, path: Any) -> str:
    """Write canonical dataset JSON; returns the content digest."""
    from pathlib import Path

    data = ds.to_canonical_bytes()
    Path(path).write_bytes(data)
    return content_digest(data)


def dataset_from_arrays(
    dataset_id: str,
    timesteps: Iterable[date],
    values: np.ndarray,
    item_ids: Iterable[str],
    direction: Direction = Direction.HIGHER_IS_BETTER,
    display_names: Mapping[str, str] | None = None,
) -> TimeSeriesDataset:
    """Build a fully observed dataset from a (n_items, n_steps) matrix."""
    values = np.asarray(values, dtype=float)
    ids = list(item_ids)
    if values.shape[0] != len(ids):
        raise GuardrailError("row count does not match item_ids")
    names = display_names or {}
    items = tuple(
        ItemSeries(
            item_id=i,
            display_name=names.get(i, i),
            values=values[row],
            missing=np.zeros(values.shape[1], dtype=bool),
        )
        for row, i in enumerate(ids)
    )
    return TimeSeriesDataset(
        dataset_id=dataset_id, timesteps=tuple(timesteps), items=items, direction=direction
    )
