from datetime import date

import numpy as np
import pytest

from guardrails.errors import IngestError
from guardrails.ingest import ColumnSchema, ingest_long_csv, ingest_wide_csv

from .conftest import long_csv


def test_single_item_three_dates():
    data = long_csv(
        [("TEL", "2024-01-02", 140.1), ("TEL", "2024-01-03", 141.0), ("TEL", "2024-01-04", 139.8)]
    )
    ds = ingest_long_csv(data)
    assert ds.item_ids == ("TEL",)
    assert len(ds.timesteps) == 3
    assert not ds.has_missing()
    assert ds.transform_log == ()


def test_union_of_dates_masks_unobserved():
    data = long_csv(
        [
            ("A", "2024-01-01", 1.0),
            ("A", "2024-01-02", 2.0),
            ("B", "2024-01-02", 5.0),
            ("B", "2024-01-03", 6.0),
        ]
    )
    ds = ingest_long_csv(data)
    assert ds.timesteps == (date(2024, 1, 1), date(2024, 1, 2), date(2024, 1, 3))
    assert list(ds.get_item("A").missing) == [False, False, True]
    assert list(ds.get_item("B").missing) == [True, False, False]


def test_bundled_sp500_snapshot_shape(sp500_raw):
    assert len(sp500_raw.items) == 500
    gaps = {(b - a).days for a, b in zip(sp500_raw.timesteps, sp500_raw.timesteps[1:])}
    assert gaps == {1, 3}  # weekdays only
    assert sp500_raw.timesteps[0] == date(2024, 1, 2)
    assert sp500_raw.timesteps[-1] == date(2024, 12, 27)
    assert sp500_raw.get_item("TEL").display_name == "TE Connectivity"


def test_bundled_covid_snapshot_has_populations(covid_raw):
    greece = covid_raw.get_item("GRC")
    assert greece.display_name == "Greece"
    assert greece.population == pytest.approx(10_423_000)


def test_malformed_row_reports_row_number():
    data = long_csv([("A", "2024-01-01", 1.0), ("A", "not-a-date", 2.0)])
    with pytest.raises(IngestError, match="row 3"):
        ingest_long_csv(data)
    data = long_csv([("A", "2024-01-01", "abc")])
    with pytest.raises(IngestError, match="row 2"):
        ingest_long_csv(data)


def test_duplicate_item_date_pair_named():
    data = long_csv([("A", "2024-01-01", 1.0), ("A", "2024-01-01", 2.0)])
    with pytest.raises(IngestError, match=r"\(A, 2024-01-01\)"):
        ingest_long_csv(data)


def test_empty_input_errors():
    with pytest.raises(IngestError, match="empty input"):
        ingest_long_csv(b"")
    with pytest.raises(IngestError, match="empty input"):
        ingest_long_csv(b"item_id,date,value\n")


def test_missing_file_errors():
    with pytest.raises(IngestError, match="not found"):
        ingest_long_csv("/nonexistent/file.csv")


def test_missing_columns_errors():
    with pytest.raises(IngestError, match="missing required columns"):
        ingest_long_csv(b"foo,bar\n1,2\n")


def test_empty_value_cell_is_masked():
    data = long_csv([("A", "2024-01-01", 1.0), ("A", "2024-01-02", "")])
    ds = ingest_long_csv(data)
    assert list(ds.get_item("A").missing) == [False, True]


def test_conflicting_population_errors():
    data = long_csv(
        [("A", "2024-01-01", 1.0, 100), ("A", "2024-01-02", 2.0, 200)],
        header="item_id,date,value,population",
    )
    with pytest.raises(IngestError, match="conflicting population"):
        ingest_long_csv(data, ColumnSchema(population="population"))


def test_wide_adapter_matches_long():
    wide = b"date,A,B\n2024-01-01,1,5\n2024-01-02,2,\n"
    ds = ingest_wide_csv(wide)
    assert ds.item_ids == ("A", "B")
    assert list(ds.get_item("B").missing) == [False, True]
    np.testing.assert_array_equal(ds.get_item("A").values, [1.0, 2.0])
