# sensors_test.py
# MIT License 2026
import pytest

from weedmap.core.sensors import (SENSORS, SensorId, detect_sensor,
                                  get_sensor, ndvi_band_pair)
from weedmap.exceptions import SensorMismatch, UnknownSensor


def test_s2_registry():
    s2 = get_sensor("S2")
    assert s2.n_bands == 13
    assert s2.band_codes[0] == "B01"
    assert s2.band_codes[-1] == "B12"
    assert s2.revisit_days == 5


def test_ps8b_registry():
    ps = get_sensor("ps8b")
    assert ps.id == SensorId.PS8B
    assert ps.n_bands == 8


@pytest.mark.parametrize("sensor_id,expected", [("S2", (7, 3)), ("PS8B", (7, 5)), (SensorId.S2, (7, 3))])
def test_ndvi_band_pair(sensor_id, expected):
    assert ndvi_band_pair(sensor_id) == expected


def test_ndvi_bands_are_nir_and_red():
    s2 = get_sensor("S2")
    nir, red = s2.ndvi_band_pair
    assert (s2.code_of(nir), s2.code_of(red)) == ("B08", "B04")


@pytest.mark.parametrize("sensor_id", ["L8", "", "S1"])
def test_unknown_sensor(sensor_id):
    with pytest.raises(UnknownSensor):
        get_sensor(sensor_id)


@pytest.mark.parametrize("sensor", list(SENSORS.values()))
def test_registry_round_trip(sensor):
    for code in sensor.band_codes:
        assert sensor.code_of(sensor.index_of(code)) == code


def test_detect_sensor():
    assert detect_sensor(list(get_sensor("PS8B").band_codes)).id == SensorId.PS8B
    with pytest.raises(SensorMismatch):
        detect_sensor(["B1", "B2"])
    with pytest.raises(SensorMismatch):
        detect_sensor(list(reversed(get_sensor("S2").band_codes)))
