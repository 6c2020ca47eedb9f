"""Performance scoring, percentile ranks, and study-grade focal selection.

"Performance" is pinned to the value at the final timestep of the window
(period-end cumulative value, period-end percent change). Ranks use the
midrank convention and respect the dataset direction.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from .dataset import Direction, TimeSeriesDataset
from .errors import EvaluationError


@dataclass(frozen=True)
class FocalCriteria:
    """Constraints for choosing focal items worth studying."""

    target_percentile: float
    count: int
    smoothness_max: float
    floor_min: float | None = None
    floor_tolerance: float = 1.0  # "no significant dips": values below floor by more fail

    def __post_init__(self) -> None:
        if not 0.0 < self.target_percentile < 100.0:
            raise EvaluationError("target_percentile must be in (0, 100)")
        if self.count < 1:
            raise EvaluationError("count must be >= 1")

    @classmethod
    def from_json_obj(cls, obj: Mapping[str, Any]) -> "FocalCriteria":
        return cls(
            target_percentile=float(obj["target_percentile"]),
            count=int(obj["count"]),
            smoothness_max=float(obj["smoothness_max"]),
            floor_min=None if obj.get("floor_min") is None else float(obj["floor_min"]),
            floor_tolerance=float(obj.get("floor_tolerance", 1.0)),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "FocalCriteria":
        return cls.from_json_obj(json.loads(Path(path).read_text("utf-8")))


@dataclass(frozen=True)
class RankJudgment:
    """One rank estimate against the oracle's true rank."""

    item_id: str
    true_rank: float
    estimate: float | None = None

    def __post_init__(self) -> None:
        for value in (self.true_rank, self.estimate):
            if value is not None and not 0.0 <= value <= 100.0:
                raise EvaluationError(f"rank {value} outside [0, 100]")

    @property
    def abs_error(self) -> float | None:
        if self.estimate is None:
            return None
        return abs(self.estimate - self.true_rank)

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "item_id": self.item_id,
            "true_rank": self.true_rank,
            "estimate": self.estimate,
            "abs_error": self.abs_error,
        }


def performance_score(ds: TimeSeriesDataset, item_id: str) -> float:
    """The item's value at the final timestep of the window."""
    item = ds.get_item(item_id)
    if item.missing[-1]:
        raise EvaluationError(f"item {item_id!r} is masked at the final timestep")
    return float(item.values[-1])


def _all_scores(ds: TimeSeriesDataset) -> np.ndarray:
    return np.array([performance_score(ds, i) for i in ds.item_ids])


def percentile_rank(ds: TimeSeriesDataset, item_id: str) -> float:
    """Direction-aware midrank position of the item's performance, 0..100."""
    if len(ds.items) < 2:
        raise EvaluationError("percentile rank needs at least 2 items")
    scores = _all_scores(ds)
    idx = ds.item_ids.index(item_id) if item_id in ds else None
    if idx is None:
        raise EvaluationError(f"unknown item {item_id!r} in dataset {ds.dataset_id!r}")
    own = scores[idx]
    others = np.delete(scores, idx)
    if ds.direction == Direction.HIGHER_IS_BETTER:
        worse = int((others < own).sum())
    else:
        worse = int((others > own).sum())
    ties = int((others == own).sum())
    return 100.0 * (worse + 0.5 * ties) / (len(scores) - 1)


def smoothness(series: Sequence[float] | np.ndarray) -> float:
    """Total variation over net change; 1.0 for monotone series, +inf for flat."""
    values = np.asarray(series, dtype=float)
    if values.size < 3:
        raise EvaluationError("smoothness needs a series of length >= 3")
    net = values[-1] - values[0]
    if net == 0:
        return math.inf
    return float(np.abs(np.diff(values)).sum() / abs(net))


def select_focal_items(ds: TimeSeriesDataset, criteria: FocalCriteria) -> list[str]:
    """Smooth, above-floor items closest to the target percentile rank."""
    floor_failed = 0
    smooth_failed = 0
    survivors = []
    for item in ds.items:
        if criteria.floor_min is not None:
            if item.values.min() < criteria.floor_min - criteria.floor_tolerance:
                floor_failed += 1
                continue
        if smoothness(item.values) > criteria.smoothness_max:
            smooth_failed += 1
            continue
        survivors.append(item.item_id)
    if len(survivors) < criteria.count:
        raise EvaluationError(
            f"only {len(survivors)} items satisfy the criteria, need {criteria.count} "
            f"(floor removed {floor_failed}, smoothness removed {smooth_failed})"
        )
    ranked = sorted(
        survivors,
        key=lambda i: (abs(percentile_rank(ds, i) - criteria.target_percentile), i),
    )
    return ranked[: criteria.count]


def rank_error(judgment: RankJudgment) -> float:
    """Absolute difference between estimate and true rank, in rank points."""
    error = judgment.abs_error
    if error is None:
        raise EvaluationError(f"judgment for {judgment.item_id!r} has no estimate")
    return error
