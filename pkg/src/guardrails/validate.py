"""Missing-data policy: removal over budget, deterministic gap filling.

Interior gaps are filled by linear interpolation between the nearest unmasked
neighbors; leading/trailing gaps by nearest-value extension. Interpolation is
in timestep-index space. Every removal and fill lands in the report.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .dataset import ItemSeries, TimeSeriesDataset, TransformDescriptor
from .errors import DataValidationError


@dataclass(frozen=True)
class ValidationPolicy:
    max_missing_fraction: float = 0.05
    interpolation: str = "linear"

    def __post_init__(self) -> None:
        if not 0.0 <= self.max_missing_fraction <= 1.0:
            raise DataValidationError("max_missing_fraction must be in [0, 1]")
        if self.interpolation != "linear":
            raise DataValidationError(f"unsupported interpolation {self.interpolation!r}")


@dataclass
class ValidationReport:
    dataset_id: str
    policy: ValidationPolicy
    removed: list[dict[str, Any]] = field(default_factory=list)
    fills: list[dict[str, Any]] = field(default_factory=list)

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "dataset_id": self.dataset_id,
            "policy": {
                "max_missing_fraction": self.policy.max_missing_fraction,
                "interpolation": self.policy.interpolation,
            },
            "removed": self.removed,
            "fills": self.fills,
        }


def validate(
    ds: TimeSeriesDataset, policy: ValidationPolicy = ValidationPolicy()
) -> tuple[TimeSeriesDataset, ValidationReport]:
    """Apply the missing-data policy; the result has zero masked cells."""
    report = ValidationReport(dataset_id=ds.dataset_id, policy=policy)
    n = len(ds.timesteps)
    positions = np.arange(n)
    items = []
    for item in ds.items:
        fraction = item.missing_fraction
        if fraction > policy.max_missing_fraction:
            report.removed.append(
                {"item_id": item.item_id, "missing_fraction": round(fraction, 6)}
            )
            continue
        if not item.missing.any():
            items.append(item)
            continue
        observed = np.flatnonzero(~item.missing)
        # np.interp: linear between neighbors, constant extension at the edges
        filled = np.interp(positions, observed, item.values[observed])
        first, last = observed[0], observed[-1]
        for t in np.flatnonzero(item.missing):
            method = (
                "extend_leading" if t < first else "extend_trailing" if t > last else "interpolate"
            )
            report.fills.append(
                {
                    "item_id": item.item_id,
                    "timestep": ds.timesteps[t].isoformat(),
                    "value": float(filled[t]),
                    "method": method,
                }
            )
        items.append(
            ItemSeries(
                item_id=item.item_id,
                display_name=item.display_name,
                values=filled,
                missing=np.zeros(n, dtype=bool),
                population=item.population,
            )
        )
    if not items:
        raise DataValidationError(
            f"validation removed every item of dataset {ds.dataset_id!r} "
            f"(budget {policy.max_missing_fraction})"
        )
    descriptor = TransformDescriptor(
        "validate",
        {
            "max_missing_fraction": policy.max_missing_fraction,
            "interpolation": policy.interpolation,
        },
    )
    return ds.with_log(descriptor, items=tuple(items)), report
