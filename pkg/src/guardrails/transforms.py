"""Dataset transforms: weekly resampling, normalization, windowing.

Every transform appends a descriptor to the dataset's transform log with the
params needed to replay it, so a transformed dataset is reproducible from the
raw ingest output bit for bit.
"""
from __future__ import annotations

from datetime import date, timedelta

import numpy as np

from .dataset import ItemSeries, TimeSeriesDataset, TransformDescriptor
from .errors import TransformError

WEEKDAYS = ("MON", "TUE", "WED", "THU", "FRI", "SAT", "SUN")


def _anchor_index(anchor: str | int) -> int:
    if isinstance(anchor, int):
        if not 0 <= anchor <= 6:
            raise TransformError(f"weekday index {anchor} out of range")
        return anchor
    try:
        return WEEKDAYS.index(anchor.upper())
    except ValueError:
        raise TransformError(f"unknown weekday {anchor!r}; expected one of {WEEKDAYS}") from None


def week_ending(day: date, anchor: str | int = "SUN") -> date:
    """The date of the enclosing week's last day (default: ISO weeks, Sunday)."""
    idx = _anchor_index(anchor)
    return day + timedelta(days=(idx - day.weekday()) % 7)


def resample_weekly(ds: TimeSeriesDataset, anchor: str | int = "SUN") -> TimeSeriesDataset:
    """Collapse to one timestep per calendar week, keeping the last observation.

    Each weekly value is the item's last unmasked observation in that week
    (closing semantics); weeks with no observation stay masked.
    """
    idx = _anchor_index(anchor)
    steps = ds.timesteps
    if len(steps) >= 2:
        min_gap = min((b - a).days for a, b in zip(steps, steps[1:]))
        if min_gap >= 7:
            raise TransformError("dataset is already weekly or coarser")

    week_of = [week_ending(d, idx) for d in steps]
    weeks = sorted(set(week_of))
    week_index = {w: i for i, w in enumerate(weeks)}

    items = []
    for item in ds.items:
        values = np.full(len(weeks), np.nan)
        missing = np.ones(len(weeks), dtype=bool)
        for t, w in enumerate(week_of):
            if not item.missing[t]:  # later t in the same week overwrites: last obs wins
                values[week_index[w]] = item.values[t]
                missing[week_index[w]] = False
        items.append(
            ItemSeries(
                item_id=item.item_id,
                display_name=item.display_name,
                values=values,
                missing=missing,
                population=item.population,
            )
        )
    descriptor = TransformDescriptor("resample_weekly", {"anchor": WEEKDAYS[idx]})
    return ds.with_log(descriptor, timesteps=tuple(weeks), items=tuple(items))


def percent_change_from_start(ds: TimeSeriesDataset) -> TimeSeriesDataset:
    """Rebase every series to percentage change from its first value."""
    if ds.has_transform("percent_change_from_start"):
        raise TransformError("percent_change_from_start already applied (see transform log)")
    items = []
    for item in ds.items:
        if item.missing[0]:
            raise TransformError(f"item {item.item_id!r} is masked at the first timestep")
        start = item.values[0]
        if start == 0:
            raise TransformError(f"item {item.item_id!r} has zero value at the first timestep")
        values = 100.0 * (item.values - start) / start
        items.append(
            ItemSeries(
                item_id=item.item_id,
                display_name=item.display_name,
                values=values,
                missing=item.missing,
                population=item.population,
            )
        )
    descriptor = TransformDescriptor("percent_change_from_start")
    return ds.with_log(descriptor, items=tuple(items))


def per_million(ds: TimeSeriesDataset) -> TimeSeriesDataset:
    """Scale values to per million inhabitants using item populations."""
    missing_pop = [it.item_id for it in ds.items if not it.population]
    if missing_pop:
        raise TransformError(f"items without population: {missing_pop[:10]}")
    items = []
    for item in ds.items:
        items.append(
            ItemSeries(
                item_id=item.item_id,
                display_name=item.display_name,
                values=item.values / item.population * 1e6,
                missing=item.missing,
                population=item.population,
            )
        )
    descriptor = TransformDescriptor("per_million")
    return ds.with_log(descriptor, items=tuple(items))


def window_clip(ds: TimeSeriesDataset, start: date, end: date) -> TimeSeriesDataset:
    """Restrict to timesteps in [start, end]; fully masked items are dropped.

    Dropped item ids are recorded in the transform descriptor params.
    """
    if start >= end:
        raise TransformError(f"window start {start} must precede end {end}")
    keep = [i for i, d in enumerate(ds.timesteps) if start <= d <= end]
    if not keep:
        raise TransformError(
            f"window [{start}, {end}] contains none of the dataset timesteps"
        )
    sel = np.array(keep)
    items = []
    dropped = []
    for item in ds.items:
        missing = item.missing[sel]
        if missing.all():
            dropped.append(item.item_id)
            continue
        items.append(
            ItemSeries(
                item_id=item.item_id,
                display_name=item.display_name,
                values=item.values[sel],
                missing=missing,
                population=item.population,
            )
        )
    descriptor = TransformDescriptor(
        "window_clip",
        {"start": start.isoformat(), "end": end.isoformat(), "dropped": sorted(dropped)},
    )
    return ds.with_log(
        descriptor, timesteps=tuple(ds.timesteps[i] for i in keep), items=tuple(items)
    )


def apply_descriptor(ds: TimeSeriesDataset, descriptor: TransformDescriptor) -> TimeSeriesDataset:
    """Replay one logged transform on a dataset."""
    kind, params = descriptor.kind, descriptor.params
    if kind == "resample_weekly":
        return resample_weekly(ds, anchor=params.get("anchor", "SUN"))
    if kind == "percent_change_from_start":
        return percent_change_from_start(ds)
    if kind == "per_million":
        return per_million(ds)
    if kind == "window_clip":
        return window_clip(
            ds, date.fromisoformat(params["start"]), date.fromisoformat(params["end"])
        )
    if kind == "validate":
        from .validate import ValidationPolicy, validate

        policy = ValidationPolicy(
            max_missing_fraction=params.get("max_missing_fraction", 0.05),
            interpolation=params.get("interpolation", "linear"),
        )
        return validate(ds, policy)[0]
    raise TransformError(f"cannot replay transform kind {kind!r}")


def replay_log(
    raw: TimeSeriesDataset, log: tuple[TransformDescriptor, ...]
) -> TimeSeriesDataset:
    """Replay a full transform log against raw ingest output."""
    ds = raw
    for descriptor in log:
        ds = apply_descriptor(ds, descriptor)
    return ds
