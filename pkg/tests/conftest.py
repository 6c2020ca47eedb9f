from __future__ import annotations

import io
from datetime import date, timedelta

import numpy as np
import pytest

from guardrails.dataset import Direction, TimeSeriesDataset, dataset_from_arrays, save_dataset
from guardrails.ingest import ColumnSchema, ingest_long_csv
from guardrails.resources import data_path
from guardrails.transforms import (
    per_million,
    percent_change_from_start,
    resample_weekly,
    window_clip,
)
from guardrails.validate import validate

COVID_WINDOW = (date(2020, 4, 1), date(2021, 8, 31))


def long_csv(rows: list[tuple], header: str = "item_id,date,value") -> bytes:
    buf = io.StringIO()
    buf.write(header + "\n")
    for row in rows:
        buf.write(",".join(str(v) for v in row) + "\n")
    return buf.getvalue().encode()


def toy_dataset(
    values: np.ndarray,
    ids: list[str] | None = None,
    direction: Direction = Direction.HIGHER_IS_BETTER,
    dataset_id: str = "toy",
) -> TimeSeriesDataset:
    values = np.asarray(values, dtype=float)
    ids = ids or [f"I{i:03d}" for i in range(values.shape[0])]
    start = date(2024, 1, 1)
    steps = [start + timedelta(days=i) for i in range(values.shape[1])]
    return dataset_from_arrays(dataset_id, steps, values, ids, direction=direction)


@pytest.fixture(scope="session")
def covid_raw() -> TimeSeriesDataset:
    return ingest_long_csv(
        data_path("covid_cases.csv.gz"),
        ColumnSchema(population="population", display_name="country"),
        dataset_id="covid",
        direction=Direction.LOWER_IS_BETTER,
    )


@pytest.fixture(scope="session")
def covid_ds(covid_raw: TimeSeriesDataset) -> TimeSeriesDataset:
    ds = per_million(covid_raw)
    ds = window_clip(ds, *COVID_WINDOW)
    return validate(ds)[0]


@pytest.fixture(scope="session")
def sp500_raw() -> TimeSeriesDataset:
    return ingest_long_csv(
        data_path("sp500_2024.csv.gz"),
        ColumnSchema(display_name="name"),
        dataset_id="sp500",
    )


@pytest.fixture(scope="session")
def sp500_ds(sp500_raw: TimeSeriesDataset) -> TimeSeriesDataset:
    ds = resample_weekly(sp500_raw)
    ds = percent_change_from_start(ds)
    return validate(ds)[0]


@pytest.fixture(scope="session")
def service_dir(tmp_path_factory, covid_ds, sp500_ds):
    directory = tmp_path_factory.mktemp("svc_data")
    save_dataset(covid_ds, directory / "covid.json")
    save_dataset(sp500_ds, directory / "sp500.json")
    return directory
