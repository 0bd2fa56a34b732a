# validation_test.py
# MIT License 2026
import pytest

from tests.utils import day, make_observation
from weedmap.core.records import ParcelRecord, TimeSeries
from weedmap.core.sensors import get_sensor
from weedmap.core.validation import schema_fingerprint, validate_observation
from weedmap.exceptions import (BandCountMismatch, CloudFractionOutOfRange,
                                EmptyParcel, LengthMismatch,
                                NegativeReflectance, NonAscendingDates,
                                NonFiniteValue, SensorMismatch)

S2 = get_sensor("S2")


def test_valid_observation():
    obs = make_observation(value=0.2, cloud=0.0)
    assert validate_observation(obs, S2) is obs


def test_band_count_mismatch():
    obs = make_observation(reflectances=[0.1] * 8)
    with pytest.raises(BandCountMismatch) as error:
        validate_observation(obs, S2)
    assert error.value.field == "reflectances"
    assert error.value.pixel_id == "P1-px01"


def test_cloud_fraction_out_of_range():
    obs = make_observation(cloud=1.3, offset=4)
    with pytest.raises(CloudFractionOutOfRange) as error:
        validate_observation(obs, S2)
    assert error.value.date == day(4)
    assert "cloud_fraction" in str(error.value)


@pytest.mark.parametrize("value,error", [(-0.01, NegativeReflectance), (float("nan"), NonFiniteValue), (float("inf"), NonFiniteValue)])
def test_invalid_reflectance(value, error):
    reflectances = [0.1] * 13
    reflectances[3] = value
    with pytest.raises(error) as raised:
        validate_observation(make_observation(reflectances=reflectances), S2)
    assert raised.value.field == "reflectances[B04]"


def test_observation_of_another_sensor():
    with pytest.raises(SensorMismatch):
        validate_observation(make_observation(sensor="PS8B"), S2)


def test_time_series_invariants():
    with pytest.raises(NonAscendingDates):
        TimeSeries((day(2), day(1)), (0.1, 0.2))
    with pytest.raises(NonAscendingDates):
        TimeSeries((day(1), day(1)), (0.1, 0.2))
    with pytest.raises(LengthMismatch):
        TimeSeries((day(1),), (0.1, 0.2))
    assert len(TimeSeries((), ())) == 0


def test_empty_parcel():
    with pytest.raises(EmptyParcel):
        ParcelRecord("P1", frozenset(), "Almonds")


def test_schema_fingerprint():
    assert schema_fingerprint(["a", "b"]) == schema_fingerprint(("a", "b"))
    assert schema_fingerprint(["a", "b"]) != schema_fingerprint(["b", "a"])
    assert schema_fingerprint(["ab"]) != schema_fingerprint(["a", "b"])
