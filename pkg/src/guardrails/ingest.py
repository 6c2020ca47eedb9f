"""CSV ingestion into the canonical dataset model.

Long format (one row per item/date observation) is canonical; a wide-format
adapter converts spreadsheet-style files on read. Gzip-compressed sources are
handled transparently.
"""
from __future__ import annotations

import csv
import gzip
import io
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import IO, Any, Iterable

import numpy as np

from .dataset import Direction, ItemSeries, TimeSeriesDataset
from .errors import IngestError


@dataclass(frozen=True)
class ColumnSchema:
    """Maps dataset roles to CSV column names."""

    item_id: str = "item_id"
    date: str = "date"
    value: str = "value"
    population: str | None = None
    display_name: str | None = None


def _open_text(source: str | Path | bytes | IO[bytes]) -> IO[str]:
    if isinstance(source, (str, Path)):
        path = Path(source)
        if not path.exists():
            raise IngestError(f"input file not found: {path}")
        raw = path.read_bytes()
    elif isinstance(source, bytes):
        raw = source
    else:
        raw = source.read()
    if raw[:2] == b"\x1f\x8b":
        raw = gzip.decompress(raw)
    return io.StringIO(raw.decode("utf-8"))


def _parse_date(text: str, row_no: int) -> date:
    try:
        return date.fromisoformat(text.strip())
    except ValueError:
        raise IngestError(f"row {row_no}: invalid ISO-8601 date {text!r}") from None


def _parse_value(text: str, row_no: int) -> float | None:
    text = text.strip()
    if not text:
        return None  # empty cell = unobserved
    try:
        return float(text)
    except ValueError:
        raise IngestError(f"row {row_no}: invalid numeric value {text!r}") from None


def ingest_long_csv(
    source: str | Path | bytes | IO[bytes],
    schema: ColumnSchema = ColumnSchema(),
    dataset_id: str = "dataset",
    direction: Direction = Direction.HIGHER_IS_BETTER,
) -> TimeSeriesDataset:
    """Build an aligned dataset from a long-format CSV.

    Timesteps are the sorted union of observed dates; (item, date) cells with
    no observation are masked missing. No transform is applied.
    """
    text = _open_text(source)
    reader = csv.DictReader(text)
    if reader.fieldnames is None:
        raise IngestError("empty input: no header row")
    required = [schema.item_id, schema.date, schema.value]
    missing_cols = [c for c in required if c not in reader.fieldnames]
    if missing_cols:
        raise IngestError(f"missing required columns: {missing_cols}")

    observations: dict[str, dict[date, float | None]] = {}
    names: dict[str, str] = {}
    populations: dict[str, float] = {}
    all_dates: set[date] = set()

    for row_no, row in enumerate(reader, start=2):
        if row.get(schema.item_id) is None or row.get(schema.value) is None:
            raise IngestError(f"row {row_no}: wrong number of fields")
        item = row[schema.item_id].strip()
        if not item:
            raise IngestError(f"row {row_no}: empty item id")
        when = _parse_date(row[schema.date], row_no)
        value = _parse_value(row[schema.value], row_no)

        per_item = observations.setdefault(item, {})
        if when in per_item:
            raise IngestError(f"duplicate observation for ({item}, {when.isoformat()})")
        per_item[when] = value
        all_dates.add(when)

        if schema.display_name and row.get(schema.display_name, "").strip():
            names[item] = row[schema.display_name].strip()
        if schema.population and row.get(schema.population, "").strip():
            pop = _parse_value(row[schema.population], row_no)
            if pop is not None:
                prior = populations.get(item)
                if prior is not None and prior != pop:
                    raise IngestError(f"conflicting population values for item {item!r}")
                populations[item] = pop

    if not observations:
        raise IngestError("empty input: no data rows")

    timesteps = tuple(sorted(all_dates))
    index = {d: i for i, d in enumerate(timesteps)}
    items = []
    for item_id in sorted(observations):
        values = np.full(len(timesteps), np.nan)
        mask = np.ones(len(timesteps), dtype=bool)
        for when, value in observations[item_id].items():
            if value is not None:
                values[index[when]] = value
                mask[index[when]] = False
        items.append(
            ItemSeries(
                item_id=item_id,
                display_name=names.get(item_id, item_id),
                values=values,
                missing=mask,
                population=populations.get(item_id),
            )
        )
    return TimeSeriesDataset(
        dataset_id=dataset_id, timesteps=timesteps, items=tuple(items), direction=direction
    )


def ingest_wide_csv(
    source: str | Path | bytes | IO[bytes],
    date_column: str = "date",
    dataset_id: str = "dataset",
    direction: Direction = Direction.HIGHER_IS_BETTER,
) -> TimeSeriesDataset:
    """Adapter for wide files (one date column, one column per item)."""
    text = _open_text(source)
    reader = csv.DictReader(text)
    if reader.fieldnames is None:
        raise IngestError("empty input: no header row")
    if date_column not in reader.fieldnames:
        raise IngestError(f"missing date column {date_column!r}")
    item_cols = [c for c in reader.fieldnames if c != date_column]

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["item_id", "date", "value"])
    for row_no, row in enumerate(reader, start=2):
        when = row[date_column]
        for col in item_cols:
            writer.writerow([col, when, row.get(col, "")])
    buf.seek(0)
    return ingest_long_csv(
        buf.getvalue().encode("utf-8"),
        ColumnSchema(),
        dataset_id=dataset_id,
        direction=direction,
    )
