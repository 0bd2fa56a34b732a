# pixel_test.py
# MIT License 2026
import numpy as np
import pandas as pd
import pytest

from tests.utils import WINDOW_END, WINDOW_START, day
from weedmap.core.classes import WeedClass
from weedmap.core.records import ParcelRecord, TimeSeries
from weedmap.core.sensors import get_sensor
from weedmap.exceptions import ConfigError, GridMismatch
from weedmap.features.pixel import (assemble_pixel_features, feature_sources,
                                    pixel_schema, write_pixel_dataset)
from weedmap.preprocess.grid import build_grid

GRID = build_grid(WINDOW_START, WINDOW_END, 10)


def gridded_pixel(sensor, seed=0):
    rng = np.random.default_rng(seed)
    return {code: TimeSeries(GRID.dates, rng.uniform(0.05, 0.5, GRID.n_steps).tolist()) for code in sensor.band_codes}


@pytest.mark.parametrize("sensor_id,expected", [("S2", 518), ("PS8B", 333)])
def test_schema_length(sensor_id, expected):
    sensor = get_sensor(sensor_id)
    vector = assemble_pixel_features("px", gridded_pixel(sensor), sensor)
    assert len(vector.schema) == expected
    assert len(vector.values) == expected
    assert len(pixel_schema(sensor, 13)) == expected


def test_schema_is_deterministic():
    s2 = get_sensor("S2")
    a = assemble_pixel_features("a", gridded_pixel(s2, 1), s2)
    b = assemble_pixel_features("b", gridded_pixel(s2, 2), s2)
    assert a.schema == b.schema


def test_schema_layout():
    schema = pixel_schema(get_sensor("PS8B"), 3)
    assert schema[:7] == ("B1@0", "B1@1", "B1@2", "B1_diff@1", "B1_diff@2", "B1_roc@1", "B1_roc@2")
    assert schema[-1] == "NDVI_roc@2"


def test_ndvi_block():
    ps = get_sensor("PS8B")
    gridded = gridded_pixel(ps)
    vector = assemble_pixel_features("px", gridded, ps)
    start = vector.schema.index("NDVI@0")
    nir, red = gridded["B8"].as_array(), gridded["B6"].as_array()
    assert vector.values[start:start + 13] == pytest.approx((nir - red) / (nir + red))


def test_drop_bands():
    s2 = get_sensor("S2")
    vector = assemble_pixel_features("px", gridded_pixel(s2), s2, drop_bands=["B10", "B09"])
    assert len(vector.schema) == 12 * 37
    assert not any(name.startswith("B10") for name in vector.schema)
    assert feature_sources(s2, ["B10"])[-1] == "NDVI"
    with pytest.raises(ConfigError):
        feature_sources(s2, ["B99"])


def test_missing_band():
    s2 = get_sensor("S2")
    gridded = gridded_pixel(s2)
    del gridded["B03"]
    with pytest.raises(GridMismatch):
        assemble_pixel_features("px", gridded, s2)


def test_misaligned_band():
    s2 = get_sensor("S2")
    gridded = gridded_pixel(s2)
    gridded["B03"] = TimeSeries([day(1 + 10 * k) for k in range(13)], [0.1] * 13)
    with pytest.raises(GridMismatch):
        assemble_pixel_features("px", gridded, s2)


def test_write_pixel_dataset(tmp_path):
    s2 = get_sensor("S2")
    vectors = [assemble_pixel_features(f"P1-px0{k}", gridded_pixel(s2, k), s2) for k in range(3)]
    owners = [ParcelRecord("P1", frozenset(["P1-px00", "P1-px01"]), "Olives", WeedClass.Tillage)]
    path = tmp_path / "pixels.csv"
    write_pixel_dataset(str(path), vectors, owners)
    frame = pd.read_csv(path)
    assert list(frame.columns[:3]) == ["pixel_id", "parcel_id", "label"]
    assert list(frame["pixel_id"]) == ["P1-px00", "P1-px01"]
    assert list(frame["label"]) == ["Tillage", "Tillage"]
    assert frame.shape[1] == 3 + 518
